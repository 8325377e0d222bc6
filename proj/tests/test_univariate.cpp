#include "doctest.h"

#include <algorithm>

#include "hypcurve/linalg.hpp"
#include "hypcurve/random.hpp"
#include "hypcurve/univariate.hpp"

using namespace hypcurve;

namespace {

Poly<Rational> P(std::vector<Rational> asc) { return Poly<Rational>(std::move(asc)); }

Poly<Rational> from_roots(const std::vector<Rational>& roots, const Rational& lead = 1) {
  Poly<Rational> p = Poly<Rational>::constant(lead);
  for (const auto& r : roots) p *= Poly<Rational>::linear(1, -r);
  return p;
}

// Sorted-root oracle for interlacing with planted rational roots.
bool oracle_interlaces(std::vector<Rational> a, std::vector<Rational> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!(a[i] <= b[i] && b[i] <= a[i + 1])) return false;
  return true;
}

}  // namespace

TEST_CASE("isolate real roots, exact") {
  CHECK(isolate_real_roots(P({1, 0, 1})).empty());

  auto r = isolate_real_roots(from_roots({1, 1, -3}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].contains(-3));
  CHECK(r[0].multiplicity == 1);
  CHECK(r[1].contains(1));
  CHECK(r[1].multiplicity == 2);

  auto c = isolate_real_roots(P({-2, -1, 2, 1}));
  REQUIRE(c.size() == 3);
  CHECK(c[0].contains(-2));
  CHECK(c[1].contains(-1));
  CHECK(c[2].contains(1));
  for (const auto& root : c) CHECK(root.multiplicity == 1);

  // Irrational roots: +-sqrt(2), refined.
  auto s = isolate_real_roots(P({-2, 0, 1}));
  REQUIRE(s.size() == 2);
  refine_root(s[1], P({-2, 0, 1}), Rational(1, 1000000));
  CHECK(std::abs(s[1].midpoint().get_d() - 1.41421356237) < 1e-6);
}

TEST_CASE("squarefree decomposition") {
  auto p = from_roots({1, 1, 1, 2, 2, 5}, 3);
  auto f = squarefree_decomposition(p);
  REQUIRE(f.size() == 3);
  CHECK(f[0].second == 1);
  CHECK(f[0].first == from_roots({5}));
  CHECK(f[1].first == from_roots({2}));
  CHECK(f[2].first == from_roots({1}));
  CHECK(squarefree_part(p) == from_roots({1, 2, 5}));
}

TEST_CASE("interlacing, exact") {
  CHECK(interlaces(P({-1, 0, 1}), P({0, 1}), true));
  CHECK_FALSE(interlaces(P({-1, 0, 1}), P({-2, 1}), false));
  CHECK(interlaces(from_roots({1, -1, -2}), from_roots({0, Rational(-3, 2)}), true));
  CHECK_FALSE(interlaces(P({1, 0, 1}), P({0, 1}), false));
  // Shared roots interlace only weakly.
  CHECK(interlaces(from_roots({1, 2}), from_roots({1}), false));
  CHECK_FALSE(interlaces(from_roots({1, 2}), from_roots({1}), true));
  // A double root of p must be matched by q.
  CHECK(interlaces(from_roots({0, 0, 3}), from_roots({0, 1}), false));
  CHECK_FALSE(interlaces(from_roots({0, 0, 3}), from_roots({1, 2}), false));
}

TEST_CASE("float roots and interlacing") {
  auto roots = complex_roots(Poly<Real>({Real(1), Real(0), Real(1)}));
  REQUIRE(roots.size() == 2);
  for (const auto& z : roots) CHECK(abs_of(z.norm2() - Real(1)) < Real(1e-70));
  CHECK(isolate_real_roots(Poly<Real>({Real(1), Real(0), Real(1)})).empty());

  auto pr = from_roots({1, 1, -3}).map<Real>([](const Rational& q) { return to_real(q); });
  auto r = isolate_real_roots(pr);
  REQUIRE(r.size() == 2);
  CHECK(abs_of(r[0].value + Real(3)) < Real(1e-60));
  CHECK(r[1].multiplicity == 2);

  auto to_r = [](const Poly<Rational>& p) {
    return p.map<Real>([](const Rational& q) { return to_real(q); });
  };
  CHECK(interlaces(to_r(P({-1, 0, 1})), to_r(P({0, 1})), true));
  CHECK_FALSE(interlaces(to_r(P({-1, 0, 1})), to_r(P({-2, 1})), false));
  CHECK(interlaces(to_r(from_roots({1, -1, -2})), to_r(from_roots({0, Rational(-3, 2)})), true));
  CHECK_FALSE(interlaces(to_r(from_roots({1, 2})), to_r(from_roots({1})), true));
  CHECK(interlaces(to_r(from_roots({1, 2})), to_r(from_roots({1})), false));

  auto dr = complex_roots(Poly<double>({-6.0, 11.0, -6.0, 1.0}));
  std::vector<double> re;
  for (auto& z : dr) re.push_back(z.re);
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(re[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("univariate Bezout matrices") {
  CHECK(bezout_uni(P({-1, 0, 1}), P({0, 1})) == Matrix<Rational>::identity(2));
  auto b2 = bezout_uni(P({1, 0, 1}), P({0, 1}));
  CHECK(b2(0, 0) == -1);
  CHECK(b2(1, 1) == 1);
  CHECK(b2(0, 1) == 0);
  CHECK_FALSE(is_positive_semidefinite(b2));
  auto b3 = bezout_uni(from_roots({1, 1}), from_roots({1}));
  CHECK(b3(0, 0) == 1);
  CHECK(b3(0, 1) == -1);
  CHECK(b3(1, 1) == 1);
  CHECK(rank(b3) == 1);
}

TEST_CASE("property: Bezout PSD iff interlacing (200 instances)") {
  Rng rng(2024);
  int agree = 0, interlacing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(2, 6));
    std::vector<Rational> a, b;
    for (int i = 0; i < d; ++i) a.push_back(rng.rational(12, 2));
    std::sort(a.begin(), a.end());
    const bool plant = rng.uniform_int(0, 1) == 1;
    for (int i = 0; i + 1 < d; ++i) {
      if (plant) {
        Rational w = Rational(rng.uniform_int(0, 4), 4);
        b.push_back(a[i] + w * (a[i + 1] - a[i]));
      } else {
        b.push_back(rng.rational(12, 2));
      }
    }
    auto p = from_roots(a, Rational(rng.uniform_int(1, 3)));
    auto q = from_roots(b, Rational(rng.uniform_int(1, 3)));
    const bool expected = oracle_interlaces(a, b);
    interlacing += expected;
    CHECK(interlaces(p, q, false) == expected);
    if (is_positive_semidefinite(bezout_uni(p, q)) == expected) ++agree;
  }
  CHECK(agree == 200);
  CHECK(interlacing > 50);
}

TEST_CASE("property: Bezout rank and bilinearity") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int common = static_cast<int>(rng.uniform_int(0, 2));
    std::vector<Rational> shared, ra, rb;
    for (int i = 0; i < common; ++i) shared.push_back(Rational(3 * i + 100));
    for (int i = 0; i < 3; ++i) ra.push_back(Rational(2 * i + 1));
    for (int i = 0; i < 2; ++i) rb.push_back(Rational(-2 * i - 7));
    ra.insert(ra.end(), shared.begin(), shared.end());
    rb.insert(rb.end(), shared.begin(), shared.end());
    auto p = from_roots(ra, rng.rational(5, 1) + 7);
    auto q = from_roots(rb, rng.rational(5, 1) + 7);
    CHECK(rank(bezout_uni(p, q)) == static_cast<std::size_t>(p.degree() - gcd(p, q).degree()));

    std::vector<Rational> c1, c2;
    for (int i = 0; i < 4; ++i) {
      c1.push_back(rng.rational(9, 2));
      c2.push_back(rng.rational(9, 3));
    }
    auto q1 = P(c1), q2 = P(c2);
    auto p5 = p.degree() > 4 ? p : p * Poly<Rational>::linear(1, 5);
    CHECK(bezout_uni(p5, q1 + q2) == bezout_uni(p5, q1) + bezout_uni(p5, q2));
  }
}
