#pragma once

// Real and complex roots of univariate polynomials, interlacing, univariate Bezout matrices.

#include <utility>
#include <vector>

#include "hypcurve/matrix.hpp"
#include "hypcurve/poly.hpp"
#include "hypcurve/scalar.hpp"

namespace hypcurve {

/// An isolated real root: lo == hi for an exactly known rational root, otherwise the root lies
/// in the open interval (lo, hi).
struct RealRoot {
  Rational lo;
  Rational hi;
  int multiplicity = 1;

  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return exact() ? x == lo : (lo < x && x < hi); }
};

using RealRootList = std::vector<RealRoot>;

/// Yun's algorithm: p = c * prod_k P_k^k with the P_k monic, squarefree, pairwise coprime.
/// Factors equal to 1 are omitted.
std::vector<std::pair<Poly<Rational>, int>> squarefree_decomposition(const Poly<Rational>& p);

/// The squarefree part p / gcd(p, p'), monic.
Poly<Rational> squarefree_part(const Poly<Rational>& p);

/// Number of distinct real roots in (a, b] of a squarefree polynomial (Sturm's theorem).
int sturm_count(const std::vector<Poly<Rational>>& sturm, const Rational& a, const Rational& b);
std::vector<Poly<Rational>> sturm_sequence(const Poly<Rational>& p);

/// All real roots with multiplicities, sorted, in pairwise disjoint intervals.
RealRootList isolate_real_roots(const Poly<Rational>& p);

/// Shrinks the isolating interval of a root of the squarefree polynomial q below the width.
void refine_root(RealRoot& root, const Poly<Rational>& q, const Rational& width);

/// Sum of the multiplicities of the real roots.
int real_root_count(const Poly<Rational>& p);

bool is_real_rooted(const Poly<Rational>& p);

/// Roots of q (degree deg p - 1) interlace those of p: a_1 <= b_1 <= a_2 <= ... <= a_d.
bool interlaces(const Poly<Rational>& p, const Poly<Rational>& q, bool strict);

// ---- floating point roots --------------------------------------------------------------------

/// All complex roots by Aberth-Ehrlich iteration (each root listed with multiplicity one).
template <class T>
std::vector<Complex<T>> complex_roots(const Poly<T>& p);
template <class T>
std::vector<Complex<T>> complex_roots(const Poly<Complex<T>>& p);

template <class T>
struct NumericRoot {
  T value;
  int multiplicity = 1;
};

/// Real roots grouped into clusters within cluster_tol (relative to max(1, |root|)). Gaps between
/// cluster_tol and ambiguity_tol raise PrecisionExhausted. Imaginary parts below real_tol count
/// as real.
template <class T>
std::vector<NumericRoot<T>> numeric_real_roots(const Poly<T>& p, const T& cluster_tol,
                                               const T& ambiguity_tol, const T& real_tol);

/// Default float-mode isolation: clustering at 1e-30, ambiguity band up to 1e-15.
std::vector<NumericRoot<Real>> isolate_real_roots(const Poly<Real>& p);

/// Float-mode interlacing; strict means gaps above 1e-12 after scaling the root spread to one.
bool interlaces(const Poly<Real>& p, const Poly<Real>& q, bool strict);

// ---- Bezout matrices -------------------------------------------------------------------------

/// Coefficients b_ij (of s^i t^j) of (p(s)q(t) - p(t)q(s)) / (s - t), as a d x d table, for any
/// coefficient ring C (scalars or forms). p and q are ascending coefficient lists.
template <class C>
std::vector<std::vector<C>> bezout_table(const std::vector<C>& p, const std::vector<C>& q,
                                         std::size_t d, const C& zero) {
  std::vector<std::vector<C>> b(d, std::vector<C>(d, zero));
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t c = 0; c < q.size(); ++c) {
      if (a == c) continue;
      // p_a q_c (s^a t^c - s^c t^a) / (s - t)
      const bool forward = a > c;
      const std::size_t hi = forward ? a : c;
      const std::size_t lo = forward ? c : a;
      C coef = p[a] * q[c];
      for (std::size_t m = 0; m + lo + 1 <= hi; ++m) {
        const std::size_t i = lo + m;
        const std::size_t j = hi - 1 - m;
        if (i >= d || j >= d) throw std::invalid_argument("Bezout matrix: degree exceeds size");
        if (forward)
          b[i][j] = b[i][j] + coef;
        else
          b[i][j] = b[i][j] - coef;
      }
    }
  return b;
}

/// Bezout matrix of p and q (deg q < deg p), size deg p.
template <class S>
Matrix<S> bezout_uni(const Poly<S>& p, const Poly<S>& q) {
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("Bezout matrix needs deg p >= 1");
  if (q.degree() >= d) throw std::invalid_argument("Bezout matrix needs deg q < deg p");
  auto t = bezout_table<S>(p.coeffs(), q.coeffs(), static_cast<std::size_t>(d), S(0));
  Matrix<S> m(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) m(i, j) = t[i][j];
  return m;
}

}  // namespace hypcurve
