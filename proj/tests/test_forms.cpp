#include "doctest.h"

#include "hypcurve/error.hpp"
#include "hypcurve/form.hpp"
#include "hypcurve/random.hpp"

using namespace hypcurve;

namespace {

Form<Rational> F(const char* s) { return parse_form(s); }

Poly<Rational> P(std::vector<long> asc) {
  std::vector<Rational> c;
  for (long v : asc) c.emplace_back(v);
  return Poly<Rational>(c);
}

Form<Rational> random_form(Rng& rng, int degree) {
  Form<Rational> f(degree);
  for (auto& c : f.coeffs()) c = rng.rational(9, rng.uniform_int(1, 4));
  return f;
}

Point3<Rational> random_point(Rng& rng) {
  return {rng.rational(7, 3), rng.rational(7, 2), rng.rational(7, 5)};
}

}  // namespace

TEST_CASE("monomial storage order") {
  auto ex = exponents(2);
  REQUIRE(ex.size() == 6);
  CHECK(ex[0] == Exponent{2, 0, 0});
  CHECK(ex[1] == Exponent{1, 1, 0});
  CHECK(ex[2] == Exponent{1, 0, 1});
  CHECK(ex[3] == Exponent{0, 2, 0});
  CHECK(ex[5] == Exponent{0, 0, 2});
  for (std::size_t n = 0; n < ex.size(); ++n) CHECK(monomial_index(2, ex[n].i, ex[n].k) == n);
}

TEST_CASE("parser") {
  auto f = F("x^3 + 2*x^2*y - x*y^2 - 2*y^3 - x*z^2");
  CHECK(f.degree() == 3);
  CHECK(f.coeff(2, 1, 0) == 2);
  CHECK(f.coeff(0, 3, 0) == -2);
  CHECK(f.coeff(1, 0, 2) == -1);
  CHECK(F("x^2 - y^2 - 1/5*z^2").coeff(0, 0, 2) == Rational(-1, 5));
  CHECK(F("(x+y)^2") == F("x^2 + 2*x*y + y^2"));
  CHECK(F("2x y - 0.5 z^2").coeff(0, 0, 2) == Rational(-1, 2));
  CHECK(F(F("x^2 - 3/7*y*z").str().c_str()) == F("x^2 - 3/7*y*z"));
  CHECK_THROWS_AS(F("x^2 + y"), ParseError);
  CHECK_THROWS_AS(F("x^2 + "), ParseError);
  CHECK_THROWS_AS(F("x / y"), ParseError);
  CHECK_THROWS_AS(F("w"), ParseError);
}

TEST_CASE("restrict to a line") {
  Point3<Rational> e1{1, 0, 0}, e2{0, 1, 0};
  CHECK(F("x^2 - y^2 - z^2").restrict_to_line(e1, e2) == P({-1, 0, 1}));
  CHECK(F("x^2 - y^2 - z^2").restrict_to_line(e1, e1) == P({1, 2, 1}));
  CHECK(F("x^3 + 2*x^2*y - x*y^2 - 2*y^3 - x*z^2").restrict_to_line(e1, e2) == P({-2, -1, 2, 1}));
}

TEST_CASE("directional derivative") {
  CHECK(F("x^2 - y^2 - z^2").dir_derivative({0, 0, 1}) == F("-2*z"));
  auto one = F("x").dir_derivative({1, 0, 0});
  CHECK(one.degree() == 0);
  CHECK(one.coeff(0, 0, 0) == 1);
  CHECK(F("x^3 + 2*x^2*y - x*y^2 - 2*y^3 - x*z^2").dir_derivative({1, 0, 0}) ==
        F("3*x^2 + 4*x*y - y^2 - z^2"));
}

TEST_CASE("division") {
  auto q = F("x^2 - y^2 - z^2");
  auto r = divide(q * F("x"), F("x"));
  CHECK(r.residual == 0);
  CHECK(r.quotient == q);

  auto fc = F("x^3 + 2*x^2*y - x*y^2 - 2*y^3 - x*z^2");
  auto bad = divide(fc, F("x"));
  CHECK(bad.residual > Rational(1, 100));

  auto prod = Form<Rational>::constant(Rational(24, 125)) * fc * F("2*x - y");
  auto rc = divide(prod, fc);
  CHECK(rc.residual == 0);
  CHECK(rc.quotient == F("48/125*x - 24/125*y"));

  auto fr = (q * F("x + 3*y")).convert<Real>();
  auto rr = divide(fr, q.convert<Real>());
  CHECK(rr.residual < Real(1e-60));
  CHECK(abs_of(rr.quotient.coeff(0, 1, 0) - Real(3)) < Real(1e-60));
  auto rd = divide(fc.convert<double>(), F("x").convert<double>());
  CHECK(rd.residual > 0.01);
  CHECK_THROWS(divide(fc, Form<Rational>(1)));
}

TEST_CASE("form matrix determinant") {
  FormMatrix<Rational> m = {{F("x"), F("-y"), F("-z")}, {F("-y"), F("x"), Form<Rational>(1)},
                            {F("-z"), Form<Rational>(1), F("x")}};
  CHECK(determinant(m) == F("x^3 - x*y^2 - x*z^2"));
  FormMatrix<Rational> two = {{F("x"), F("y")}, {F("z"), F("x")}};
  CHECK(determinant(two) == F("x^2 - y*z"));
}

TEST_CASE("property: restriction endpoints, Euler identity, exact division") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int d = static_cast<int>(rng.uniform_int(1, 5));
    auto f = random_form(rng, d);
    auto e = random_point(rng);
    auto v = random_point(rng);
    auto p = f.restrict_to_line(e, v);
    CHECK(p.coeff(0) == f.eval(v));
    CHECK(p.coeff(static_cast<std::size_t>(d)) == f.eval(e));

    Form<Rational> euler(d - 1 + 1);
    for (int var = 0; var < 3; ++var) euler += Form<Rational>::variable(var) * f.partial(var);
    CHECK(euler == Form<Rational>::constant(Rational(d)) * f);

    auto g = random_form(rng, static_cast<int>(rng.uniform_int(1, 3)));
    if (g.is_zero()) continue;
    auto h = random_form(rng, static_cast<int>(rng.uniform_int(0, 2)));
    auto fg = h * g;
    auto res = divide(fg, g);
    CHECK(res.residual == 0);
    CHECK(res.quotient * g == fg);
  }
}

TEST_CASE("composition with a linear map") {
  auto f = F("x^2 - y^2 - z^2");
  Matrix<Rational> t(3, 3);
  t(0, 0) = 1; t(0, 1) = 1;
  t(1, 1) = 1;
  t(2, 2) = 2;
  CHECK(f.compose(t) == F("x^2 + 2*x*y - 4*z^2"));
  Rng rng(3);
  auto g = random_form(rng, 3);
  auto p = random_point(rng);
  Matrix<Rational> m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rng.rational(5, 2);
  Point3<Rational> mp{m(0, 0) * p[0] + m(0, 1) * p[1] + m(0, 2) * p[2],
                      m(1, 0) * p[0] + m(1, 1) * p[1] + m(1, 2) * p[2],
                      m(2, 0) * p[0] + m(2, 1) * p[1] + m(2, 2) * p[2]};
  CHECK(g.compose(m).eval(p) == g.eval(mp));
}
