#include "doctest.h"

#include "fixtures.hpp"
#include "hypcurve/curves.hpp"
#include "hypcurve/error.hpp"
#include "hypcurve/random.hpp"

using namespace hypcurve;

namespace {

Form<Rational> F(const char* s) { return parse_form(s); }
Form<Real> FR(const char* s) { return parse_form(s).convert<Real>(); }

ProjPoint real_point(double x, double y, double z) {
  return make_point(Point3<Real>{Real(x), Real(y), Real(z)});
}

int multiplicity_at(const IntersectionCycle& c, const ProjPoint& p, const Real& tol) {
  for (const auto& cp : c.points)
    if (point_distance(cp.point, p) <= tol) return cp.multiplicity;
  return 0;
}

}  // namespace

TEST_CASE("canonical scaling of points") {
  auto p = real_point(4, -5, 0);
  CHECK(p.real);
  CHECK(abs_of(p.coords[0].re + Real("0.8")) < Real(1e-70));
  CHECK(p.coords[1].re == Real(1));
  // Ties go to the later coordinate.
  auto q = real_point(7, 10, -10);
  CHECK(q.coords[2].re == Real(1));
  CHECK(abs_of(q.coords[1].re + Real(1)) < Real(1e-70));
}

TEST_CASE("intersection cycle: two-oval quartic and its cubic interlacer") {
  auto cyc = intersection_cycle(F(fixtures::kQuartic), F(fixtures::kQuarticInterlacer));
  CHECK(cyc.total_multiplicity() == 12);
  const Real tol(1e-6);
  CHECK(multiplicity_at(cyc, real_point(4, -5, 0), tol) == 4);
  CHECK(multiplicity_at(cyc, real_point(11, 5, 0), tol) == 2);
  CHECK(multiplicity_at(cyc, real_point(1, 5, 0), tol) == 2);
  CHECK(multiplicity_at(cyc, real_point(7, 10, -10), tol) == 2);
  CHECK(multiplicity_at(cyc, real_point(7, 10, 10), tol) == 2);
  CHECK(cyc.points.size() == 5);

  auto data = classify_cycle(cyc, {Real(1), Real(0), Real(0)});
  CHECK(data.r == 6);
  CHECK(data.s == 0);
  CHECK(data.contacts.size() == 5);
}

TEST_CASE("intersection cycle: quadric and a line") {
  auto cyc = intersection_cycle(F("x^2 - y^2 - z^2"), F("x"));
  REQUIRE(cyc.points.size() == 2);
  for (const auto& cp : cyc.points) {
    CHECK(cp.multiplicity == 1);
    CHECK_FALSE(cp.point.real);
    CHECK(abs_of(cp.point.coords[0].re) + abs_of(cp.point.coords[0].im) < Real(1e-60));
  }
  auto data = classify_cycle(cyc, {Real(1), Real(0), Real(0)});
  CHECK(data.r == 0);
  CHECK(data.s == 1);
  REQUIRE(data.lines.size() == 1);
  const auto& l = data.lines[0];
  CHECK(l.coeff(1, 0, 0) > 0);
  CHECK(abs_of(l.coeff(0, 1, 0)) < Real(1e-60));
  CHECK(abs_of(l.coeff(0, 0, 1)) < Real(1e-60));
  for (const auto& pr : data.pairs) {
    CHECK(l.eval<ComplexReal>(pr.q.coords).abs() < Real(1e-25));
    CHECK(l.eval<ComplexReal>(pr.q_bar.coords).abs() < Real(1e-25));
  }
}

TEST_CASE("intersection cycle: node against a line through it") {
  auto cyc = intersection_cycle(F("x*y"), F("x + y"));
  REQUIRE(cyc.points.size() == 1);
  CHECK(cyc.points[0].multiplicity == 2);
  CHECK(point_distance(cyc.points[0].point, real_point(0, 0, 1)) < Real(1e-60));
}

TEST_CASE("intersection cycle errors") {
  CHECK_THROWS_AS(intersection_cycle(F("x*y"), F("x*z")), CommonComponentError);
  auto cyc = intersection_cycle(F("x^2 - y^2 - z^2"), F("y"));
  CHECK_THROWS_AS(classify_cycle(cyc, {Real(1), Real(0), Real(0)}), NotRealContactError);
}

TEST_CASE("float forms are intersected through their dyadic values") {
  auto cyc = intersection_cycle(FR("x^2 - y^2 - z^2"), FR("x"));
  CHECK(cyc.total_multiplicity() == 2);
}

TEST_CASE("genericity checks") {
  auto fc = FR(fixtures::kCubic);
  auto cyc = intersection_cycle(F(fixtures::kCubic), F(fixtures::kCubicInterlacer));
  auto data = classify_cycle(cyc, {Real(1), Real(0), Real(0)});
  CHECK(data.r == 2);
  CHECK(data.s == 1);
  auto rep = genericity_check(fc, data);
  CHECK(rep.ok());

  // Three planted collinear points on z = 0.
  ContactData planted;
  for (double x : {1.0, 2.0, 3.0}) planted.contacts.push_back({real_point(x, 1, 0), 1});
  planted.contacts.push_back({real_point(0, 1, 1), 1});
  auto bad = genericity_check(fc, planted);
  CHECK_FALSE(bad.g1);
  REQUIRE(bad.collinear_points.size() == 1);
  CHECK(bad.collinear_points[0] == std::array<std::size_t, 3>{0, 1, 2});
  CHECK(bad.g2);
  CHECK_FALSE(bad.g1_nonreal_violation);
}

TEST_CASE("Jacobian criterion agrees with even multiplicity") {
  auto f = F(fixtures::kQuartic);
  auto g = F(fixtures::kQuarticInterlacer);
  auto cyc = intersection_cycle(f, g);
  for (const auto& cp : cyc.points)
    CHECK(jacobian_vanishes(f.convert<Real>(), g.convert<Real>(), cp.point, Real(1e-20)));
  auto c2 = intersection_cycle(F("x^2 - y^2 - z^2"), F("y"));
  for (const auto& cp : c2.points)
    CHECK_FALSE(jacobian_vanishes(FR("x^2 - y^2 - z^2"), FR("y"), cp.point, Real(1e-20)));
}

TEST_CASE("branch expansions") {
  auto b = branch_expansion(FR("x^2 + y^2 - z^2"), {Real(1), Real(0), Real(1)}, 2);
  CHECK(b.chart == 2);
  CHECK(b.dep_var == 0);
  CHECK(b.param_var == 1);
  REQUIRE(b.coeffs.size() == 2);
  CHECK(abs_of(b.coeffs[0]) < Real(1e-70));
  CHECK(abs_of(b.coeffs[1] + Real("0.5")) < Real(1e-70));

  auto lin = branch_expansion(FR("x"), {Real(0), Real(0), Real(1)}, 3);
  CHECK(lin.dep_var == 0);
  CHECK(lin.center_dep == 0);
  for (const auto& c : lin.coeffs) CHECK(is_zero(c));

  CHECK_THROWS_AS(branch_expansion(FR("x*y"), {Real(0), Real(0), Real(1)}, 2), SingularPointError);

  // Points on the branch satisfy f to the expansion order.
  auto q = FR(fixtures::kQuartic);
  auto cyc = intersection_cycle(F(fixtures::kQuartic), F(fixtures::kQuarticInterlacer));
  for (const auto& cp : cyc.points) {
    auto br = branch_expansion(q, cp.point.real_part(), 4);
    Real t("1e-6");
    Real val = abs_of(q.eval(br.at(t))) / q.max_abs_coeff();
    CHECK(val < Real("1e-27"));
  }
}

TEST_CASE("property: Bezout total and shear invariance on random curve pairs") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int d = static_cast<int>(rng.uniform_int(1, 4));
    int dg = static_cast<int>(rng.uniform_int(1, 4));
    Form<Rational> f(d), g(dg);
    for (auto& c : f.coeffs()) c = rng.rational(9, 1);
    for (auto& c : g.coeffs()) c = rng.rational(9, 1);
    auto a = intersection_cycle(f, g, 0);
    auto b = intersection_cycle(f, g, 17);
    CHECK(a.total_multiplicity() == d * dg);
    CHECK(cycles_match(a, b, Real(1e-15)));
    // Conjugation closure.
    for (const auto& cp : a.points) {
      bool found = false;
      for (const auto& other : a.points)
        if (point_distance(other.point, cp.point.conjugate()) < Real(1e-20)) found = true;
      CHECK(found);
    }
    ++checked;
  }
  CHECK(checked == 20);
}
