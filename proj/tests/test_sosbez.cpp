#include "doctest.h"

#include <string>

#include "fixtures.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/rationalize.hpp"
#include "hypcurve/sosbez.hpp"

using namespace hypcurve;

namespace {

Form<Rational> F(const std::string& s) { return parse_form(s); }

RationalPencil quadric_certified() {
  RationalPencil rp;
  rp.degree = 2;
  const Form<Rational> zero(1);
  rp.pencil = pencil_from_forms(FormMatrix<Rational>{{F("x"), F("-y"), F("-z")},
                                                     {F("-y"), F("x"), zero},
                                                     {F("-z"), zero, F("x")}});
  rp.m = monomial_vector<Rational>(1);
  rp.v = {Rational(1), Rational(0), Rational(0)};
  return rp;
}

// m^T A m in the frame, against the Wronskian composed into the same frame.
Real wronskian_gap(const Form<Real>& f, const Form<Real>& g, const Point3<Real>& e,
                   const CertifiedPencil<Real>& cp, const SosFactor<Real>& sf) {
  const Matrix<Real> t = frame_for(e);
  const std::size_t n = cp.m.size();
  Form<Real> q(2 * f.degree() - 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q += sf.a(i, j) * (cp.m[i].compose(t) * cp.m[j].compose(t));
  const Form<Real> w = wronskian(f, g, e).compose(t);
  return to_real((q - w).max_abs_coeff()) / to_real(w.max_abs_coeff());
}

}  // namespace

TEST_CASE("quadric factorization is exact") {
  Form<Rational> f = F("x^2 - y^2 - z^2");
  Form<Rational> g = F("x");
  auto sf = extract_sos<Rational>(f, g, {1, 0, 0}, quadric_certified());
  CHECK(sf.lambda == 1);
  CHECK(sf.residual == 0);
  CHECK(sf.a == Matrix<Rational>::identity(3));
  CHECK(sf.s[0][0].is_zero());
  CHECK(sf.s[0][1] == Form<Rational>::constant(1));
  CHECK(sf.s[1][0] == F("y"));
  CHECK(sf.s[2][0] == F("z"));
  CHECK(sf.s[1][1].is_zero());
  auto prod = sos_product(sf);
  CHECK(prod[0][0] == F("y^2 + z^2"));
  CHECK(prod[0][1].is_zero());
  CHECK(prod[1][1] == Form<Rational>::constant(1));
  CHECK(verify_sos(f, g, sf, Real(0)));

  SUBCASE("a zeroed column fails") {
    auto bad = sf;
    for (auto& row : bad.s) row[0] = Form<Rational>(0);
    CHECK_FALSE(verify_sos(f, g, bad, Real(0)));
  }
  SUBCASE("an indefinite A fails") {
    auto bad = sf;
    bad.a(2, 2) = -1;
    CHECK_FALSE(verify_sos(f, g, bad, Real(1)));
  }
}

TEST_CASE("degree one is a 1x1 square") {
  RationalPencil rp;
  rp.degree = 1;
  rp.pencil = pencil_from_forms(FormMatrix<Rational>{{F("x")}});
  rp.m = {Form<Rational>::constant(1)};
  rp.v = {Rational(1)};
  auto sf = extract_sos<Rational>(F("x"), Form<Rational>::constant(1), {1, 0, 0}, rp);
  CHECK(sf.residual == 0);
  CHECK(sos_product(sf)[0][0] == Form<Rational>::constant(1));
}

TEST_CASE("cubic with the derivative interlacer") {
  Form<Rational> f = F(fixtures::kCubic);
  auto res = dixon_pipeline(f, f.dir_derivative({1, 0, 0}), {1, 0, 0});
  REQUIRE(res.state.data.r == 0);
  auto sf = extract_sos(f, res);
  CHECK(sf.residual <= Real("1e-9"));
  CHECK(verify_sos(f.convert<Real>(), res.state.g, sf, Real("1e-9")));
  CHECK(sf.s.size() == 6);
  CHECK(wronskian_gap(f.convert<Real>(), res.state.g, {1, 0, 0}, kernel_relation(res), sf) < 1e-9);

  SUBCASE("exact over Q after rationalization") {
    auto rep = rationalize_pencil(f, {1, 0, 0}, monomial_form(res), Rational(1000));
    REQUIRE(rep.success);
    const RationalPencil& rp = *rep.result;
    Form<Rational> gt(2);
    for (std::size_t i = 0; i < rp.m.size(); ++i) gt += rp.v[i] * rp.m[i];
    auto ex = extract_sos<Rational>(f, gt, {1, 0, 0}, rp);
    CHECK(ex.residual == 0);
    CHECK(verify_sos(f, gt, ex, Real(0)));
  }
}

TEST_CASE("elliptic curve in a rotated frame") {
  Form<Rational> f = F(fixtures::kElliptic);
  Point3<Rational> e{-1, 0, 1};
  DixonOptions opt;
  opt.perturb = true;
  auto res = dixon_pipeline(f, f.dir_derivative(e), e, opt);
  auto sf = extract_sos(f, res);
  CHECK(sf.residual <= Real("1e-9"));
  const Point3<Real> er{-1, 0, 1};
  CHECK(wronskian_gap(f.convert<Real>(), res.state.g, er, kernel_relation(res), sf) < 1e-9);
}

TEST_CASE("preconditions") {
  auto res = dixon_pipeline(F(fixtures::kCubic), F(fixtures::kCubicInterlacer), {1, 0, 0});
  CHECK_THROWS_AS(extract_sos(F(fixtures::kCubic), res), InputError);
  CHECK_THROWS_AS(extract_sos<Rational>(F("x^2 - y^2 - z^2"), F("x^2"), {1, 0, 0}, quadric_certified()),
                  InputError);
  // A scaled v breaks the relation.
  auto bad = quadric_certified();
  bad.v[0] = 2;
  CHECK_THROWS_AS(extract_sos<Rational>(F("x^2 - y^2 - z^2"), F("x"), {1, 0, 0}, bad),
                  InternalConsistencyError);
}
