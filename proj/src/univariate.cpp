#include "hypcurve/univariate.hpp"

#include <algorithm>
#include <cmath>

#include "hypcurve/error.hpp"

namespace hypcurve {

std::vector<std::pair<Poly<Rational>, int>> squarefree_decomposition(const Poly<Rational>& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<std::pair<Poly<Rational>, int>> out;
  Poly<Rational> f = p.monic();
  Poly<Rational> fp = f.derivative();
  Poly<Rational> a = gcd(f, fp);
  Poly<Rational> b = f / a;
  Poly<Rational> c = fp / a;
  Poly<Rational> d = c - b.derivative();
  for (int k = 1; b.degree() > 0; ++k) {
    Poly<Rational> g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, k);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

Poly<Rational> squarefree_part(const Poly<Rational>& p) {
  if (p.degree() <= 0) return Poly<Rational>::constant(Rational(1));
  return (p / gcd(p, p.derivative())).monic();
}

std::vector<Poly<Rational>> sturm_sequence(const Poly<Rational>& p) {
  std::vector<Poly<Rational>> seq{p, p.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    Poly<Rational> r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

namespace {

int sign_variations(const std::vector<Poly<Rational>>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    int sg = sgn(s.eval(x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

Rational cauchy_bound(const Poly<Rational>& p) {
  Rational m = 0;
  const Rational lead = abs(p.lead());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(i))) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

// A split point of (a, b) that is not a root of q.
Rational split_point(const Poly<Rational>& q, const Rational& a, const Rational& b) {
  static const long kFractions[][2] = {{1, 2}, {3, 7}, {4, 7}, {2, 5}, {3, 5}, {5, 11}, {6, 11}};
  for (const auto& fr : kFractions) {
    Rational m = a + (b - a) * Rational(fr[0], fr[1]);
    if (sgn(q.eval(m)) != 0) return m;
  }
  for (long k = 12;; ++k) {
    Rational m = a + (b - a) * Rational(k, 2 * k + 1);
    if (sgn(q.eval(m)) != 0) return m;
  }
}

void isolate_in(const Poly<Rational>& q, const std::vector<Poly<Rational>>& seq, const Rational& a,
                const Rational& b, int count, int mult, RealRootList& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({a, b, mult});
    return;
  }
  Rational m = split_point(q, a, b);
  int left = sturm_count(seq, a, m);
  isolate_in(q, seq, a, m, left, mult, out);
  isolate_in(q, seq, m, b, count - left, mult, out);
}

RealRootList isolate_squarefree(const Poly<Rational>& q, int mult) {
  RealRootList out;
  if (q.degree() <= 0) return out;
  auto seq = sturm_sequence(q);
  Rational bound = cauchy_bound(q);
  int count = sturm_count(seq, -bound, bound);
  isolate_in(q, seq, -bound, bound, count, mult, out);
  return out;
}

bool overlaps(const RealRoot& a, const RealRoot& b) {
  if (a.exact() && b.exact()) return a.lo == b.lo;
  if (a.exact()) return b.contains(a.lo);
  if (b.exact()) return a.contains(b.lo);
  return a.lo < b.hi && b.lo < a.hi;
}

}  // namespace

int sturm_count(const std::vector<Poly<Rational>>& sturm, const Rational& a, const Rational& b) {
  return sign_variations(sturm, a) - sign_variations(sturm, b);
}

void refine_root(RealRoot& root, const Poly<Rational>& q, const Rational& width) {
  if (root.exact()) return;
  int s_lo = sgn(q.eval(root.lo));
  while (root.hi - root.lo > width) {
    Rational m = (root.lo + root.hi) / 2;
    int sm = sgn(q.eval(m));
    if (sm == 0) {
      root.lo = root.hi = m;
      return;
    }
    if (sm == s_lo)
      root.lo = m;
    else
      root.hi = m;
  }
}

RealRootList isolate_real_roots(const Poly<Rational>& p) {
  if (p.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
  auto factors = squarefree_decomposition(p);
  std::vector<std::pair<RealRoot, const Poly<Rational>*>> all;
  for (const auto& [q, k] : factors)
    for (const auto& r : isolate_squarefree(q, k)) all.emplace_back(r, &q);
  // Distinct factors have distinct roots; refine until the intervals separate.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        while (overlaps(all[i].first, all[j].first)) {
          Rational wi = (all[i].first.hi - all[i].first.lo) / 2;
          Rational wj = (all[j].first.hi - all[j].first.lo) / 2;
          refine_root(all[i].first, *all[i].second, wi);
          refine_root(all[j].first, *all[j].second, wj);
          changed = true;
        }
      }
  }
  RealRootList out;
  for (auto& [r, q] : all) out.push_back(r);
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
  return out;
}

int real_root_count(const Poly<Rational>& p) {
  int n = 0;
  for (const auto& [q, k] : squarefree_decomposition(p)) {
    if (q.degree() <= 0) continue;
    auto seq = sturm_sequence(q);
    Rational bound = cauchy_bound(q);
    n += k * sturm_count(seq, -bound, bound);
  }
  return n;
}

bool is_real_rooted(const Poly<Rational>& p) { return real_root_count(p) == p.degree(); }

bool interlaces(const Poly<Rational>& p, const Poly<Rational>& q, bool strict) {
  const int d = p.degree();
  if (d < 1 || q.degree() != d - 1) return false;
  if (!is_real_rooted(p) || !is_real_rooted(q)) return false;
  if (d == 1) return true;
  // Isolate the distinct roots of p*q jointly and attribute multiplicities.
  Poly<Rational> rad = squarefree_part(p * q);
  RealRootList joint = isolate_squarefree(rad, 1);
  auto fp = squarefree_decomposition(p);
  auto fq = squarefree_decomposition(q);
  auto mult_at = [](const std::vector<std::pair<Poly<Rational>, int>>& fs, const RealRoot& r) {
    for (const auto& [f, k] : fs) {
      bool hit = r.exact() ? sgn(f.eval(r.lo)) == 0 : sgn(f.eval(r.lo)) * sgn(f.eval(r.hi)) < 0;
      if (hit) return k;
    }
    return 0;
  };
  std::sort(joint.begin(), joint.end(),
            [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
  std::vector<int> alpha, beta;  // ranks of the sorted roots with multiplicity
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    int mp = mult_at(fp, joint[idx]);
    int mq = mult_at(fq, joint[idx]);
    for (int k = 0; k < mp; ++k) alpha.push_back(static_cast<int>(idx));
    for (int k = 0; k < mq; ++k) beta.push_back(static_cast<int>(idx));
  }
  if (static_cast<int>(alpha.size()) != d || static_cast<int>(beta.size()) != d - 1)
    throw InternalConsistencyError("interlacing test lost track of root multiplicities");
  for (int i = 0; i + 1 < d; ++i) {
    if (strict) {
      if (!(alpha[i] < beta[i] && beta[i] < alpha[i + 1])) return false;
    } else {
      if (!(alpha[i] <= beta[i] && beta[i] <= alpha[i + 1])) return false;
    }
  }
  return true;
}

// ---- floating point ------------------------------------------------------------------------

namespace {

template <class T>
Complex<T> eval_complex(const std::vector<Complex<T>>& c, const Complex<T>& z, Complex<T>& deriv) {
  Complex<T> val(T(0));
  deriv = Complex<T>(T(0));
  for (std::size_t i = c.size(); i-- > 0;) {
    deriv = deriv * z + val;
    val = val * z + c[i];
  }
  return val;
}

}  // namespace

template <class T>
std::vector<Complex<T>> complex_roots(const Poly<Complex<T>>& p) {
  const int n = p.degree();
  if (n < 0) throw std::invalid_argument("roots of the zero polynomial");
  if (n == 0) return {};
  std::vector<Complex<T>> c = p.monic().coeffs();
  // Zero roots are split off exactly.
  std::size_t zeros = 0;
  while (zeros < c.size() && is_zero(c[zeros])) ++zeros;
  std::vector<Complex<T>> roots(zeros, Complex<T>(T(0)));
  c.erase(c.begin(), c.begin() + static_cast<long>(zeros));
  const int m = static_cast<int>(c.size()) - 1;
  if (m == 0) return roots;
  if (m == 1) {
    roots.push_back(-c[0]);
    return roots;
  }
  // Initial guesses on a circle of radius given by the Fujiwara bound, rotated off symmetry.
  double radius = 0;
  for (int i = 0; i < m; ++i) {
    double r = to_double(c[static_cast<std::size_t>(i)].abs());
    if (i == 0) r /= 2;
    double v = std::pow(r, 1.0 / (m - i));
    if (v > radius) radius = v;
  }
  radius *= 2;
  if (!(radius > 0) || !std::isfinite(radius)) radius = 1;
  std::vector<Complex<T>> z(static_cast<std::size_t>(m));
  const double two_pi = 6.283185307179586;
  for (int k = 0; k < m; ++k) {
    double ang = two_pi * k / m + 0.4;
    z[static_cast<std::size_t>(k)] = Complex<T>(T(radius * std::cos(ang)), T(radius * std::sin(ang)));
  }
  const T eps = epsilon_of<T>();
  const int max_iter = 200 + static_cast<int>(current_precision_bits());
  std::vector<bool> done(static_cast<std::size_t>(m), false);
  for (int it = 0; it < max_iter; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      Complex<T> dp;
      Complex<T> pv = eval_complex(c, z[i], dp);
      if (is_zero(pv)) {
        done[i] = true;
        continue;
      }
      Complex<T> ratio = pv / dp;
      Complex<T> s(T(0));
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) s += Complex<T>(T(1)) / (z[i] - z[j]);
      Complex<T> w = ratio / (Complex<T>(T(1)) - ratio * s);
      z[i] -= w;
      T scale = z[i].abs();
      if (scale < T(1)) scale = T(1);
      if (w.abs() <= eps * scale * T(4))
        done[i] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

template <class T>
std::vector<Complex<T>> complex_roots(const Poly<T>& p) {
  return complex_roots(p.template map<Complex<T>>([](const T& v) { return Complex<T>(v); }));
}

template <class T>
std::vector<NumericRoot<T>> numeric_real_roots(const Poly<T>& p, const T& cluster_tol,
                                               const T& ambiguity_tol, const T& real_tol) {
  auto roots = complex_roots(p);
  std::vector<T> reals;
  for (const auto& r : roots) {
    T scale = r.abs();
    if (scale < T(1)) scale = T(1);
    T im = abs_of(r.im) / scale;
    if (im <= real_tol)
      reals.push_back(r.re);
    else if (im <= ambiguity_tol)
      throw PrecisionExhausted("root too close to the real axis to classify");
  }
  std::sort(reals.begin(), reals.end());
  std::vector<NumericRoot<T>> out;
  for (const auto& r : reals) {
    if (!out.empty()) {
      T scale = abs_of(r);
      if (scale < T(1)) scale = T(1);
      T gap = (r - out.back().value) / scale;
      if (gap <= cluster_tol) {
        // Running mean of the cluster.
        int m = out.back().multiplicity;
        out.back().value = (out.back().value * T(m) + r) / T(m + 1);
        out.back().multiplicity = m + 1;
        continue;
      }
      if (gap <= ambiguity_tol) throw PrecisionExhausted("root clusters cannot be separated");
    }
    out.push_back({r, 1});
  }
  return out;
}

std::vector<NumericRoot<Real>> isolate_real_roots(const Poly<Real>& p) {
  return numeric_real_roots<Real>(p, Real(1e-30), Real(1e-15), Real(1e-30));
}

bool interlaces(const Poly<Real>& p, const Poly<Real>& q, bool strict) {
  const int d = p.degree();
  if (d < 1 || q.degree() != d - 1) return false;
  auto rp = isolate_real_roots(p);
  auto rq = isolate_real_roots(q);
  std::vector<Real> a, b;
  for (const auto& r : rp)
    for (int k = 0; k < r.multiplicity; ++k) a.push_back(r.value);
  for (const auto& r : rq)
    for (int k = 0; k < r.multiplicity; ++k) b.push_back(r.value);
  if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d - 1) return false;
  Real spread = a.back() - a.front();
  if (is_zero(spread)) spread = Real(1);
  const Real gap = strict ? Real(1e-12) * spread : Real(-1e-30) * spread;
  for (int i = 0; i + 1 < d; ++i) {
    if (strict) {
      if (!(b[i] - a[i] > gap && a[i + 1] - b[i] > gap)) return false;
    } else {
      if (!(b[i] - a[i] >= gap && a[i + 1] - b[i] >= gap)) return false;
    }
  }
  return true;
}

template std::vector<Complex<Real>> complex_roots<Real>(const Poly<Real>&);
template std::vector<Complex<double>> complex_roots<double>(const Poly<double>&);
template std::vector<Complex<Real>> complex_roots<Real>(const Poly<Complex<Real>>&);
template std::vector<Complex<double>> complex_roots<double>(const Poly<Complex<double>>&);
template std::vector<NumericRoot<Real>> numeric_real_roots<Real>(const Poly<Real>&, const Real&,
                                                                 const Real&, const Real&);
template std::vector<NumericRoot<double>> numeric_real_roots<double>(const Poly<double>&,
                                                                     const double&, const double&,
                                                                     const double&);

}  // namespace hypcurve
