#include "doctest.h"

#include <string>

#include "fixtures.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/rationalize.hpp"

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

CertifiedPencil<Real> to_float(const RationalPencil& rp) {
  CertifiedPencil<Real> out;
  out.degree = rp.degree;
  out.pencil = rp.pencil.convert<Real>();
  for (const auto& m : rp.m) out.m.push_back(m.convert<Real>());
  for (const auto& v : rp.v) out.v.push_back(to_real(v));
  return out;
}

}  // namespace

TEST_CASE("quadric pencil satisfies the kernel identity") {
  Form<Rational> f = F("x^2 - y^2 - z^2");
  CHECK(verify_rational(f, {1, 0, 0}, quadric_certified()));
  // The exact conditions annihilate the flattened quadric pencil: check through the nullspace size.
  Matrix<Rational> cond = identity_conditions(f);
  CHECK(cond.rows() == 3 * 6);
  CHECK(cond.cols() == 3 * 6 + 3);
}

TEST_CASE("an already rational pencil is returned unchanged") {
  Form<Rational> f = F("x^2 - y^2 - z^2");
  RationalPencil rp = quadric_certified();
  auto rep = rationalize_pencil(f, {1, 0, 0}, to_float(rp), Rational(1000));
  REQUIRE(rep.success);
  CHECK(rep.result->pencil.a == rp.pencil.a);
  CHECK(rep.result->pencil.b == rp.pencil.b);
  CHECK(rep.result->pencil.c == rp.pencil.c);
  CHECK(rep.result->v == rp.v);
  CHECK(rep.distance == 0);
}

TEST_CASE("published elliptic matrix has an exact kernel certificate") {
  Form<Rational> f = F(fixtures::kElliptic);
  auto e = find_interior_point(f, 0);
  REQUIRE(e.has_value());
  auto p = pencil_from_forms(fixtures::pencil_forms(fixtures::kEllipticPencil));
  auto rp = kernel_certificate(f, p);
  REQUIRE(rp.has_value());
  CHECK(verify_rational(f, *e, *rp));
  // One entry bumped by one breaks the identity.
  RationalPencil bumped = *rp;
  bumped.pencil.c(0, 0) += 1;
  CHECK_FALSE(verify_rational(f, *e, bumped));
}

TEST_CASE("rationalizing the full-size cubic pencil") {
  Form<Rational> f = F(fixtures::kCubic);
  auto res = dixon_pipeline(f, f.dir_derivative({1, 0, 0}), {1, 0, 0});
  auto sol = monomial_form(res);
  auto rep = rationalize_pencil(f, {1, 0, 0}, sol, Rational(1000));
  CHECK(rep.success);
  REQUIRE(rep.result.has_value());
  CHECK(verify_rational(f, {1, 0, 0}, *rep.result));
  CHECK(rep.parameters > 0);

  SUBCASE("rounding converges as the bound grows") {
    double prev = 1e300;
    for (long den : {10L, 10000L, 100000000L}) {
      auto r = rationalize_pencil(f, {1, 0, 0}, sol, Rational(den), 0);
      CHECK(r.distance < prev);
      prev = r.distance;
    }
    CHECK(prev < 1e-6);
  }

  SUBCASE("denominator one without retries fails") {
    auto r = rationalize_pencil(f, {1, 0, 0}, sol, Rational(1), 0);
    CHECK_FALSE(r.success);
    CHECK_FALSE(r.message.empty());
    CHECK(r.attempts == 1);
    CHECK(r.distance > 0.1);
  }

  SUBCASE("retries double the bound") {
    auto r = rationalize_pencil(f, {1, 0, 0}, sol, Rational(1));
    CHECK(r.max_den_used <= 8);
    if (r.success) CHECK(verify_rational(f, {1, 0, 0}, *r.result));
  }
}

TEST_CASE("rationalizing the elliptic curve") {
  Form<Rational> f = F(fixtures::kElliptic);
  Point3<Rational> e{-1, 0, 1};
  DixonOptions opt;
  opt.perturb = true;
  auto res = dixon_pipeline(f, f.dir_derivative(e), e, opt);
  auto rep = rationalize_pencil(f, e, monomial_form(res), Rational(1000));
  CHECK(rep.success);
  REQUIRE(rep.result.has_value());
  CHECK(verify_rational(f, e, *rep.result));
}

TEST_CASE("monomial form needs r = 0") {
  auto res = dixon_pipeline(F(fixtures::kCubic), F(fixtures::kCubicInterlacer), {1, 0, 0});
  CHECK_THROWS_AS(monomial_form(res), InputError);
}
