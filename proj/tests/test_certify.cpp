#include "doctest.h"

#include <string>

#include "fixtures.hpp"
#include "hypcurve/certify.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/random.hpp"

using namespace hypcurve;

namespace {

Form<Rational> F(const std::string& s) { return parse_form(s); }

Point3<Real> to_real3(const Point3<Rational>& p) { return {to_real(p[0]), to_real(p[1]), to_real(p[2])}; }

LinearPencil<Rational> quadric_pencil() {
  return pencil_from_forms(FormMatrix<Rational>{{F("x"), F("-y"), F("-z")},
                                                {F("-y"), F("x"), Form<Rational>(1)},
                                                {F("-z"), Form<Rational>(1), F("x")}});
}

}  // namespace

TEST_CASE("quadric hand pencil passes with gamma 1") {
  auto cert = certify_pencil(F("x^2 - y^2 - z^2"), {1, 0, 0}, quadric_pencil(), F("x"));
  CHECK(cert.pass);
  CHECK(cert.exact);
  CHECK(cert.gamma == "1");
  CHECK(cert.h == "x");
  CHECK(cert.det_residual == 0);
  CHECK(cert.definite);
  CHECK(cert.region.disagreements == 0);
  CHECK(cert.region.sign_violations == 0);
  CHECK(cert.region.samples == 2000);
}

TEST_CASE("diag(x,x,x) is rejected for the quadric") {
  auto p = pencil_from_forms(FormMatrix<Rational>{{F("x"), Form<Rational>(1), Form<Rational>(1)},
                                                  {Form<Rational>(1), F("x"), Form<Rational>(1)},
                                                  {Form<Rational>(1), Form<Rational>(1), F("x")}});
  auto cert = certify_pencil(F("x^2 - y^2 - z^2"), {1, 0, 0}, p);
  CHECK_FALSE(cert.pass);
  CHECK(cert.det_residual > 0);
  CHECK(cert.region.disagreements > 0);
}

TEST_CASE("published elliptic pencil passes exactly") {
  Form<Rational> f = F(fixtures::kElliptic);
  auto e = find_interior_point(f, 0);
  REQUIRE(e.has_value());
  auto p = pencil_from_forms(fixtures::pencil_forms(fixtures::kEllipticPencil));
  auto cert = certify_pencil(f, *e, p);
  CHECK(cert.pass);
  CHECK(cert.h_degree == 1);
  CHECK(cert.det_residual == 0);
  CHECK(cert.definite);
}

TEST_CASE("published cubic pencil: det is 24 f (2x - y)") {
  Form<Rational> f = F(fixtures::kCubic);
  auto p = pencil_from_forms(fixtures::pencil_forms(fixtures::kCubicPencil));
  // The published rows are not ordered with g first, so only the g-free checks apply.
  auto cert = certify_pencil(f, {1, 0, 0}, p);
  CHECK(cert.pass);
  CHECK(cert.h == "x - 1/2*y");
  CHECK(cert.gamma == "48");
}

TEST_CASE("pipeline pencils pass with corank table") {
  struct Case {
    const char* f;
    const char* g;
    Point3<Rational> e;
  };
  const Case cases[] = {{fixtures::kCubic, fixtures::kCubicInterlacer, {1, 0, 0}},
                        {fixtures::kElliptic, fixtures::kEllipticInterlacer, {-1, 0, 1}},
                        {fixtures::kQuartic, fixtures::kQuarticInterlacer, {1, 0, 0}}};
  for (const auto& c : cases) {
    CAPTURE(c.f);
    auto res = dixon_pipeline(F(c.f), F(c.g), c.e);
    auto cert = certify_pencil(res.state.f, res.state.e, res.pencil, res.state.g, &res.state);
    for (const auto& r : cert.reasons) MESSAGE(r);
    CHECK(cert.pass);
    CHECK(cert.corank.size() == res.state.data.s * (res.state.data.s - 1) / 2 +
                                    res.state.data.s * (F(c.f).degree() - 2) + res.state.data.s);
  }
}

TEST_CASE("property: perturbed pencils fail") {
  auto res = dixon_pipeline(F(fixtures::kCubic), F(fixtures::kCubicInterlacer), {1, 0, 0});
  Rng rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    LinearPencil<Real> p = res.pencil;
    for (std::size_t i = 0; i < p.size; ++i)
      for (std::size_t j = i; j < p.size; ++j) {
        Matrix<Real>* ms[3] = {&p.a, &p.b, &p.c};
        for (auto* m : ms) {
          Real v = (*m)(i, j) * (1 + Real(rng.uniform(-1e-3, 1e-3)));
          (*m)(i, j) = (*m)(j, i) = v;
        }
      }
    CertifyOptions opt;
    opt.samples = 200;
    auto cert = certify_pencil(res.state.f, res.state.e, p, std::nullopt, nullptr, opt);
    CHECK_FALSE(cert.pass);
    CHECK(cert.det_residual > Real("1e-10"));
  }
}

TEST_CASE("certify input errors") {
  CHECK_THROWS_AS(certify_pencil(F(fixtures::kQuartic), {1, 0, 0}, quadric_pencil()), InputError);
  CHECK_THROWS_AS(certify_pencil(F("x^2 - y^2 - z^2"), {1, 1, 0}, quadric_pencil()), InputError);
  (void)to_real3;
}
