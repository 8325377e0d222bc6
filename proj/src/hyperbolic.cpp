#include "hypcurve/hyperbolic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hypcurve/error.hpp"
#include "hypcurve/linalg.hpp"
#include "hypcurve/random.hpp"
#include "hypcurve/univariate.hpp"

namespace hypcurve {

namespace {

template <class S>
S from_double(double x) {
  if constexpr (std::is_same_v<S, Rational>) {
    Rational q(static_cast<long>(std::llround(x * 16777216.0)), 16777216L);
    q.canonicalize();
    return q;
  } else {
    return S(x);
  }
}

template <class S>
Point3<S> mat_point(const Matrix<S>& t, const Point3<S>& p) {
  Point3<S> out{S(0), S(0), S(0)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += t(i, j) * p[j];
  return out;
}

// A line through e, v = T * (0, cos phi, sin phi).
template <class S>
Point3<S> sample_line(const Matrix<S>& frame, Rng& rng) {
  const double phi = rng.uniform(0.0, 3.141592653589793);
  return mat_point(frame, Point3<S>{S(0), from_double<S>(std::cos(phi)), from_double<S>(std::sin(phi))});
}

bool real_rooted(const Poly<Rational>& p) { return is_real_rooted(p); }

template <class T>
bool real_rooted(const Poly<T>& p) {
  if (p.degree() <= 0) return true;
  const T tol = std::is_same_v<T, double> ? T(1e-9) : T(1e-20);
  for (const auto& z : complex_roots(p)) {
    T scale = z.abs() > T(1) ? z.abs() : T(1);
    if (abs_of(z.im) > tol * scale) return false;
  }
  return true;
}

bool psd(const Matrix<Rational>& m) { return is_positive_semidefinite(m); }
bool pd(const Matrix<Rational>& m) { return is_positive_definite(m); }

template <class T>
bool psd(const Matrix<T>& m) {
  if (m.rows() == 0) return true;
  const T scale = m.max_abs();
  if (is_zero(scale)) return true;
  return min_eigenvalue(m) >= -T(1e-20) * scale;
}

template <class T>
bool pd(const Matrix<T>& m) {
  if (m.rows() == 0) return true;
  const T scale = m.max_abs();
  if (is_zero(scale)) return false;
  return min_eigenvalue(m) > T(1e-12) * scale;
}

Point3<Real> to_real_point(const Point3<Rational>& p) {
  return {to_real(p[0]), to_real(p[1]), to_real(p[2])};
}
Point3<Real> to_real_point(const Point3<Real>& p) { return p; }

template <class S>
S cauchy_bound(const Poly<S>& p) {
  S m(0);
  for (int i = 0; i < p.degree(); ++i) {
    S v = abs_of(p.coeff(static_cast<std::size_t>(i)) / p.lead());
    if (v > m) m = v;
  }
  return m + S(1);
}

}  // namespace

// ---- frames, Wronskians, Bezout matrices --------------------------------------------------

template <class S>
Matrix<S> frame_for(const Point3<S>& e) {
  int p = 0;
  for (int i = 1; i < 3; ++i)
    if (abs_of(e[i]) > abs_of(e[p])) p = i;
  if (is_zero(e[p])) throw InputError("direction e must be nonzero");
  Matrix<S> t(3, 3);
  for (std::size_t i = 0; i < 3; ++i) t(i, 0) = e[i];
  std::size_t col = 1;
  for (int i = 0; i < 3; ++i)
    if (i != p) t(static_cast<std::size_t>(i), col++) = S(1);
  return t;
}

template <class S>
Form<S> wronskian(const Form<S>& f, const Form<S>& g, const Point3<S>& e) {
  const int d = f.degree();
  if (d < 1) throw InputError("Wronskian needs deg f >= 1");
  if (g.is_zero()) return Form<S>(2 * d - 2);
  Form<S> out = f.dir_derivative(e) * g;
  if (g.degree() > 0) out -= f * g.dir_derivative(e);
  return out;
}

template <class S>
FormMatrix<S> bezout_multi(const Form<S>& f, const Form<S>& g, const Point3<S>& e) {
  const int d = f.degree();
  if (d < 1) throw InputError("Bezout matrix needs deg f >= 1");
  if (!g.is_zero() && g.degree() != d - 1) throw InputError("Bezout matrix needs deg g = deg f - 1");
  if (is_zero(f.eval(e))) throw InputError("f vanishes at e");
  const Matrix<S> t = frame_for(e);
  const Form<S> ff = f.compose(t);
  const Form<S> gg = g.is_zero() ? g : g.compose(t);
  auto split = [](const Form<S>& h) {
    std::vector<Form<S>> parts;
    const int deg = h.degree();
    for (int i = 0; i <= deg; ++i) {
      Form<S> part(deg - i);
      for (int k = 0; k <= deg - i; ++k) part.coeff(0, deg - i - k, k) = h.coeff(i, deg - i - k, k);
      parts.push_back(part);
    }
    return parts;
  };
  std::vector<Form<S>> pf = split(ff);
  std::vector<Form<S>> pg = g.is_zero() ? std::vector<Form<S>>{} : split(gg);
  return bezout_table<Form<S>>(pf, pg, static_cast<std::size_t>(d), Form<S>(0));
}

template <class S>
Matrix<S> bezout_at(const Form<S>& f, const Form<S>& g, const Point3<S>& e, const Point3<S>& v) {
  Poly<S> p = f.restrict_to_line(e, v);
  Poly<S> q = g.is_zero() ? Poly<S>() : g.restrict_to_line(e, v);
  if (p.degree() != f.degree()) throw InputError("f vanishes at e");
  return bezout_uni(p, q);
}

// ---- hyperbolicity and cones ----------------------------------------------------------------

template <class S>
HyperbolicityReport<S> is_hyperbolic(const Form<S>& f, const Point3<S>& e, int samples,
                                     std::uint64_t seed) {
  const S fe = f.eval(e);
  if (is_zero(fe)) throw InputError("f(e) = 0: e is not a valid direction");
  if (f.degree() < 1) throw InputError("hyperbolicity needs a form of positive degree");
  const Form<S> ff = fe > S(0) ? f : -f;
  const Form<S> de = ff.dir_derivative(e);
  const Matrix<S> frame = frame_for(e);
  Rng rng(seed);
  HyperbolicityReport<S> rep;
  for (int n = 0; n < samples; ++n) {
    const Point3<S> v = sample_line(frame, rng);
    ++rep.samples;
    const bool roots = real_rooted(ff.restrict_to_line(e, v));
    const bool bez = psd(bezout_at(ff, de, e, v));
    if (!roots) rep.roots_ok = false;
    if (!bez) rep.bezout_ok = false;
    if ((!roots || !bez) && !rep.witness) rep.witness = v;
  }
  rep.hyperbolic = rep.roots_ok && rep.bezout_ok;
  return rep;
}

bool cone_contains(const Form<Rational>& f, const Point3<Rational>& e, const Point3<Rational>& a,
                   const Rational& tol) {
  Point3<Rational> base{a[0] + tol * e[0], a[1] + tol * e[1], a[2] + tol * e[2]};
  Poly<Rational> p = f.restrict_to_line(e, base);
  if (p.degree() <= 0) return !p.is_zero();
  Poly<Rational> q = squarefree_part(p);
  if (q.degree() <= 0) return true;
  return sturm_count(sturm_sequence(q), Rational(0), cauchy_bound(q)) == 0;
}

namespace {

template <class T>
bool cone_contains_float(const Form<T>& f, const Point3<T>& e, const Point3<T>& a, const T& tol) {
  Point3<T> base{a[0] + tol * e[0], a[1] + tol * e[1], a[2] + tol * e[2]};
  Poly<T> p = f.restrict_to_line(e, base);
  int last = 0;
  for (const auto& c : p.coeffs()) {
    const int s = sign_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) return false;
    last = s;
  }
  return true;
}

}  // namespace

bool cone_contains(const Form<Real>& f, const Point3<Real>& e, const Point3<Real>& a,
                   const Real& tol) {
  return cone_contains_float(f, e, a, tol);
}

bool cone_contains(const Form<double>& f, const Point3<double>& e, const Point3<double>& a,
                   double tol) {
  return cone_contains_float(f, e, a, tol);
}

// ---- interlacers ----------------------------------------------------------------------------

namespace {

bool line_interlaces(const Poly<Rational>& p, const Poly<Rational>& q) { return interlaces(p, q, false); }
bool line_interlaces(const Poly<Real>& p, const Poly<Real>& q) { return interlaces(p, q, false); }

}  // namespace

template <class S>
InterlacerReport is_interlacer(const Form<S>& f, const Form<S>& g, const Point3<S>& e, int samples,
                               std::uint64_t seed) {
  const int d = f.degree();
  if (d < 1 || g.degree() != d - 1) throw InputError("an interlacer must have degree deg f - 1");
  const S fe = f.eval(e);
  if (is_zero(fe)) throw InputError("f(e) = 0: e is not a valid direction");
  const Form<S> ff = fe > S(0) ? f : -f;
  InterlacerReport rep;
  rep.g_positive_at_e = g.eval(e) > S(0);
  const Matrix<S> frame = frame_for(e);

  const Form<Real> fr = ff.template convert<Real>();
  const Form<Real> wr = wronskian(ff, g, e).template convert<Real>();
  const Point3<Real> er = to_real_point(e);
  const Real wscale = wr.max_abs_coeff();
  const Real real_tol("1e-20");
  const Real w_tol("1e-20");
  rep.wronskian_min = Real(std::numeric_limits<double>::infinity());
  bool all_pd = true;

  Rng rng(seed);
  for (int n = 0; n < samples; ++n) {
    const Point3<S> v = sample_line(frame, rng);
    const Point3<Real> vr = to_real_point(v);
    ++rep.samples;
    const Poly<S> p = ff.restrict_to_line(e, v);
    const Poly<S> q = g.restrict_to_line(e, v);
    if (!line_interlaces(p, q)) rep.line_failures.push_back(vr);
    const Matrix<S> b = bezout_at(ff, g, e, v);
    if (!psd(b)) rep.bezout_psd_failures.push_back(vr);
    if (!pd(b)) all_pd = false;

    // Sign of the Wronskian at the real points of V(f) on this line.
    if (is_zero(wscale)) continue;
    for (const auto& z : complex_roots(fr.restrict_to_line(er, vr))) {
      Real scale = z.abs() > Real(1) ? z.abs() : Real(1);
      if (abs_of(z.im) > real_tol * scale) continue;
      Point3<Real> pt{z.re * er[0] + vr[0], z.re * er[1] + vr[1], z.re * er[2] + vr[2]};
      Real m(0);
      for (const auto& c : pt) m = std::max(m, abs_of(c));
      for (auto& c : pt) c /= m;
      Real w = wr.eval(pt) / wscale;
      if (w < rep.wronskian_min) rep.wronskian_min = w;
      if (w < -w_tol) rep.wronskian_failures.push_back(pt);
    }
  }
  if (rep.wronskian_min == Real(std::numeric_limits<double>::infinity())) rep.wronskian_min = Real(0);
  rep.is_interlacer = rep.g_positive_at_e && rep.line_failures.empty() &&
                      rep.bezout_psd_failures.empty() && rep.wronskian_failures.empty();
  rep.strict = rep.is_interlacer && all_pd;
  return rep;
}

int extremal_contact_bound(int d) {
  if (d < 2) throw std::invalid_argument("extremal contact bound needs d >= 2");
  return ((d + 1) * d - 2 + 3) / 4;
}

// ---- interior points ------------------------------------------------------------------------

namespace {

std::vector<double> real_roots_double(const Poly<double>& p) {
  std::vector<double> out;
  if (p.degree() < 1) return out;
  for (const auto& z : complex_roots(p)) {
    double scale = std::max(1.0, z.abs());
    if (std::fabs(z.im) <= 1e-7 * scale) out.push_back(z.re);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool looks_hyperbolic(const Form<double>& f, const Point3<double>& c, Rng& rng, int lines) {
  const int d = f.degree();
  if (std::fabs(f.eval(c)) < 1e-12 * f.max_abs_coeff()) return false;
  for (int n = 0; n < lines; ++n) {
    auto s = rng.sphere();
    Poly<double> p = f.restrict_to_line(c, Point3<double>{s[0], s[1], s[2]});
    if (p.degree() != d) return false;
    if (static_cast<int>(real_roots_double(p).size()) != d) return false;
  }
  return true;
}

// Moves c toward the middle of the region along random chords.
Point3<double> centralize(const Form<double>& f, Point3<double> c, Rng& rng) {
  for (int it = 0; it < 40; ++it) {
    auto s = rng.sphere();
    Point3<double> u{s[0], s[1], s[2]};
    auto roots = real_roots_double(f.restrict_to_line(u, c));
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (double t : roots) {
      if (t < 0 && t > lo) lo = t;
      if (t > 0 && t < hi) hi = t;
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) c[i] += mid * u[i];
    double m = std::max({std::fabs(c[0]), std::fabs(c[1]), std::fabs(c[2])});
    for (auto& v : c) v /= m;
  }
  return c;
}

}  // namespace

std::optional<Point3<Rational>> find_interior_point(const Form<Rational>& f, std::uint64_t seed,
                                                    int attempts) {
  const int d = f.degree();
  if (d < 1) throw InputError("interior point search needs deg f >= 1");
  const Form<double> fd = f.normalized().convert<double>();
  Rng rng(seed);
  for (int a = 0; a < attempts; ++a) {
    auto s0 = rng.sphere();
    auto s1 = rng.sphere();
    Point3<double> base{s0[0], s0[1], s0[2]}, dir{s1[0], s1[1], s1[2]};
    auto roots = real_roots_double(fd.restrict_to_line(dir, base));
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      double t = 0.5 * (roots[i] + roots[i + 1]);
      Point3<double> c{base[0] + t * dir[0], base[1] + t * dir[1], base[2] + t * dir[2]};
      if (!looks_hyperbolic(fd, c, rng, 48)) continue;
      c = centralize(fd, c, rng);
      double m = std::max({std::fabs(c[0]), std::fabs(c[1]), std::fabs(c[2])});
      for (long den = 4; den <= (1L << 24); den *= 4) {
        Point3<Rational> q;
        for (int k = 0; k < 3; ++k) {
          q[k] = Rational(static_cast<long>(std::llround(c[k] / m * static_cast<double>(den))), den);
          q[k].canonicalize();
        }
        Rational fq = f.eval(q);
        if (is_zero(fq)) continue;
        if (fq < 0 && d % 2 == 1) {
          for (auto& v : q) v = -v;
        }
        if (is_hyperbolic(f, q, 64, seed).hyperbolic) return q;
      }
    }
  }
  return std::nullopt;
}

// ---- low-rank Gram matrices -----------------------------------------------------------------

GramResult low_rank_gram(const Form<double>& w, int rank, std::uint64_t seed, int starts) {
  if (w.degree() % 2 != 0) throw InputError("Gram matrices need a form of even degree");
  if (rank < 1) throw std::invalid_argument("Gram rank must be positive");
  const int k = w.degree() / 2;
  const auto ex = exponents(k);
  const std::size_t n = ex.size();
  const std::size_t nout = monomial_count(2 * k);
  const std::size_t nvar = n * static_cast<std::size_t>(rank);
  std::vector<std::vector<std::size_t>> prod(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      prod[a][b] = monomial_index(2 * k, ex[a].i + ex[b].i, ex[a].k + ex[b].k);
  const double wscale = w.max_abs_coeff();
  if (wscale == 0) throw InputError("Gram matrix of the zero form");
  Eigen::VectorXd target(static_cast<Eigen::Index>(nout));
  for (std::size_t i = 0; i < nout; ++i) target[static_cast<Eigen::Index>(i)] = w.coeffs()[i] / wscale;

  auto residual = [&](const Eigen::VectorXd& l) {
    Eigen::VectorXd c = -target;
    for (int r = 0; r < rank; ++r)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          c[static_cast<Eigen::Index>(prod[a][b])] +=
              l[static_cast<Eigen::Index>(a * rank + r)] * l[static_cast<Eigen::Index>(b * rank + r)];
    return c;
  };
  auto jacobian = [&](const Eigen::VectorXd& l) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nout), static_cast<Eigen::Index>(nvar));
    for (int r = 0; r < rank; ++r)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          j(static_cast<Eigen::Index>(prod[a][b]), static_cast<Eigen::Index>(a * rank + r)) +=
              2 * l[static_cast<Eigen::Index>(b * rank + r)];
    return j;
  };

  Rng rng(seed);
  Eigen::VectorXd best;
  double best_res = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts && best_res > 1e-14; ++s) {
    Eigen::VectorXd l(static_cast<Eigen::Index>(nvar));
    for (Eigen::Index i = 0; i < l.size(); ++i) l[i] = rng.normal();
    double mu = 1e-3;
    Eigen::VectorXd c = residual(l);
    double cost = c.squaredNorm();
    for (int it = 0; it < 2000 && c.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
      Eigen::MatrixXd j = jacobian(l);
      Eigen::MatrixXd jtj = j.transpose() * j;
      Eigen::VectorXd grad = j.transpose() * c;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        Eigen::MatrixXd sys = jtj;
        sys.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
        Eigen::VectorXd step = sys.ldlt().solve(-grad);
        Eigen::VectorXd cand = l + step;
        Eigen::VectorXd cc = residual(cand);
        double cand_cost = cc.squaredNorm();
        if (cand_cost < cost) {
          l = cand;
          c = cc;
          cost = cand_cost;
          mu = std::max(mu / 3, 1e-15);
          improved = true;
          break;
        }
        mu *= 4;
      }
      if (!improved) break;
    }
    double res = c.lpNorm<Eigen::Infinity>();
    if (res < best_res) {
      best_res = res;
      best = l;
    }
  }

  GramResult out;
  out.residual = best_res;
  out.converged = best_res <= 1e-12;
  Eigen::MatrixXd lm(static_cast<Eigen::Index>(n), rank);
  for (std::size_t a = 0; a < n; ++a)
    for (int r = 0; r < rank; ++r) lm(static_cast<Eigen::Index>(a), r) = best[static_cast<Eigen::Index>(a * rank + r)];
  Eigen::MatrixXd g = wscale * lm * lm.transpose();
  out.gram = Matrix<double>(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.gram(a, b) = g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  Eigen::VectorXd ev = es.eigenvalues();
  const double top = std::max(std::fabs(ev.maxCoeff()), std::fabs(ev.minCoeff()));
  for (Eigen::Index i = ev.size(); i-- > 0;) out.eigenvalues.push_back(top > 0 ? ev[i] / top : 0.0);
  return out;
}

// ---- conic search -----------------------------------------------------------------------------

namespace {

using V2 = std::array<double, 2>;

class AffineQuartic {
 public:
  AffineQuartic(const Form<double>& f, V2 center) : f_(f), fx_(f.partial(0)), fy_(f.partial(1)), c_(center) {
    scale_ = f.max_abs_coeff();
  }

  double value(const V2& p) const { return f_.eval(Point3<double>{p[0], p[1], 1.0}) / scale_; }
  V2 grad(const V2& p) const {
    Point3<double> q{p[0], p[1], 1.0};
    return {fx_.eval(q) / scale_, fy_.eval(q) / scale_};
  }

  /// Positive crossings of the ray from the center in direction phi, ascending.
  std::vector<double> crossings(double phi) const {
    Point3<double> dir{std::cos(phi), std::sin(phi), 0.0};
    Point3<double> base{c_[0], c_[1], 1.0};
    Poly<double> p = f_.restrict_to_line(dir, base);
    std::vector<double> out;
    for (const auto& z : complex_roots(p)) {
      double t = z.re;
      // Newton polish on the real part.
      Poly<double> dp = p.derivative();
      for (int i = 0; i < 4; ++i) {
        double dv = dp.eval(t);
        if (dv == 0) break;
        t -= p.eval(t) / dv;
      }
      if (std::fabs(z.im) <= 1e-6 * std::max(1.0, z.abs()) && t > 0) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  V2 point(double phi, double rho) const {
    return {c_[0] + rho * std::cos(phi), c_[1] + rho * std::sin(phi)};
  }

  const V2& center() const { return c_; }

 private:
  Form<double> f_, fx_, fy_;
  V2 c_;
  double scale_ = 1;
};

double dotv(const V2& a, const V2& b) { return a[0] * b[0] + a[1] * b[1]; }
double crossv(const V2& a, const V2& b) { return a[0] * b[1] - a[1] * b[0]; }

// Point of the inner oval where the outward normal is w: Newton on {f = 0, grad f x w = 0}.
V2 support_point(const AffineQuartic& q, const V2& w) {
  V2 best{0, 0};
  double best_val = -std::numeric_limits<double>::infinity();
  const int n = 720;
  for (int i = 0; i < n; ++i) {
    double phi = 2 * 3.141592653589793 * i / n;
    auto cr = q.crossings(phi);
    if (cr.empty()) continue;
    V2 p = q.point(phi, cr.front());
    if (dotv(p, w) > best_val) {
      best_val = dotv(p, w);
      best = p;
    }
  }
  V2 p = best;
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-7;
    auto fun = [&](const V2& x) -> V2 {
      return {q.value(x), crossv(q.grad(x), w)};
    };
    V2 f0 = fun(p);
    V2 fxh = fun({p[0] + h, p[1]});
    V2 fyh = fun({p[0], p[1] + h});
    double j00 = (fxh[0] - f0[0]) / h, j01 = (fyh[0] - f0[0]) / h;
    double j10 = (fxh[1] - f0[1]) / h, j11 = (fyh[1] - f0[1]) / h;
    double det = j00 * j11 - j01 * j10;
    if (det == 0) break;
    double dx = (f0[0] * j11 - f0[1] * j01) / det;
    double dy = (j00 * f0[1] - j10 * f0[0]) / det;
    p[0] -= dx;
    p[1] -= dy;
    if (std::hypot(dx, dy) < 1e-15 * (1 + std::hypot(p[0], p[1]))) break;
  }
  return p;
}

struct Pencil {
  V2 p1, p2, w;
  double c1 = 0, c2 = 0;

  double gline(const V2& x) const { return crossv({p2[0] - p1[0], p2[1] - p1[1]}, {x[0] - p1[0], x[1] - p1[1]}); }
  V2 ggrad() const { return {-(p2[1] - p1[1]), p2[0] - p1[0]}; }
  double l1(const V2& x) const { return c1 - dotv(w, x); }
  double l2(const V2& x) const { return dotv(w, x) - c2; }
  double lambda(const V2& x) const {
    double g = gline(x);
    return g * g / (l1(x) * l2(x));
  }
  // Up to a nonzero factor, the gradient of lambda.
  V2 lambda_dir(const V2& x) const {
    double g = gline(x), a = l1(x), b = l2(x);
    V2 gg = ggrad();
    V2 out;
    for (int i = 0; i < 2; ++i) out[i] = 2 * a * b * gg[i] - g * (b * -w[i] + a * w[i]);
    return out;
  }
};

struct OuterTouch {
  bool found = false;
  double lambda = std::numeric_limits<double>::infinity();
  V2 point{0, 0};
};

OuterTouch outer_touch(const AffineQuartic& q, const Pencil& pen, int side) {
  const int n = 1440;
  std::vector<double> lam(n, std::numeric_limits<double>::infinity());
  auto outer_point = [&](double phi, V2& out) {
    auto cr = q.crossings(phi);
    if (cr.size() < 2) return false;
    out = q.point(phi, cr.back());
    return true;
  };
  auto lambda_at = [&](double phi) {
    V2 p{0, 0};
    if (!outer_point(phi, p)) return std::numeric_limits<double>::infinity();
    double g = pen.gline(p);
    if ((g > 0 ? 1 : -1) != side) return std::numeric_limits<double>::infinity();
    double prod = pen.l1(p) * pen.l2(p);
    if (prod <= 0) return std::numeric_limits<double>::infinity();
    return g * g / prod;
  };
  int best = -1;
  for (int i = 0; i < n; ++i) {
    lam[i] = lambda_at(2 * 3.141592653589793 * i / n);
    if (std::isfinite(lam[i]) && (best < 0 || lam[i] < lam[best])) best = i;
  }
  OuterTouch out;
  if (best < 0) return out;
  // Stationarity of lambda along the oval: lambda_dir parallel to grad f.
  auto phi_fn = [&](double phi) {
    V2 p{0, 0};
    outer_point(phi, p);
    return crossv(pen.lambda_dir(p), q.grad(p));
  };
  const double step = 2 * 3.141592653589793 / n;
  double a = (best - 1) * step, b = (best + 1) * step;
  double fa = phi_fn(a), fb = phi_fn(b);
  double phi = best * step;
  if (fa * fb < 0) {
    for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
      double m = 0.5 * (a + b);
      double fm = phi_fn(m);
      if (fm * fa <= 0) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
    }
    phi = 0.5 * (a + b);
  } else {
    // Golden section on lambda itself.
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = lambda_at(x1), f2 = lambda_at(x2);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = lambda_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = lambda_at(x2);
      }
    }
    phi = 0.5 * (a + b);
  }
  V2 p{0, 0};
  if (!outer_point(phi, p)) return out;
  out.found = true;
  out.point = p;
  out.lambda = pen.lambda(p);
  return out;
}

struct ThetaEval {
  Pencil pen;
  OuterTouch t1, t2;
  double diff = 0;  // (lambda1 - lambda2) / (lambda1 + lambda2)
  bool ok = false;
};

ThetaEval eval_theta(const AffineQuartic& q, double theta) {
  ThetaEval ev;
  ev.pen.w = {std::cos(theta), std::sin(theta)};
  ev.pen.p1 = support_point(q, ev.pen.w);
  ev.pen.p2 = support_point(q, {-ev.pen.w[0], -ev.pen.w[1]});
  ev.pen.c1 = dotv(ev.pen.w, ev.pen.p1);
  ev.pen.c2 = dotv(ev.pen.w, ev.pen.p2);
  ev.t1 = outer_touch(q, ev.pen, 1);
  ev.t2 = outer_touch(q, ev.pen, -1);
  ev.ok = ev.t1.found && ev.t2.found;
  if (ev.ok) ev.diff = (ev.t1.lambda - ev.t2.lambda) / (ev.t1.lambda + ev.t2.lambda);
  return ev;
}

// Line at infinity avoiding the real curve and e.
std::optional<Matrix<Rational>> avoiding_chart(const Form<Rational>& f, const Point3<Rational>& e,
                                               Rng& rng) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    Point3<Rational> l{0, 0, 1};
    if (attempt > 0)
      for (auto& c : l) c = Rational(rng.uniform_int(-6, 6));
    if (is_zero(dot(l, e))) continue;
    // Rows: two unit rows completing l to a basis, then l (new z).
    int p = 0;
    for (int i = 1; i < 3; ++i)
      if (abs_of(l[i]) > abs_of(l[p])) p = i;
    Matrix<Rational> inv(3, 3);
    std::size_t row = 0;
    for (int i = 0; i < 3; ++i)
      if (i != p) inv(row++, static_cast<std::size_t>(i)) = Rational(1);
    for (std::size_t j = 0; j < 3; ++j) inv(2, j) = l[j];
    Matrix<Rational> t = Matrix<Rational>::identity(3);
    try {
      // Columns of the inverse, one unit vector at a time.
      for (std::size_t j = 0; j < 3; ++j) {
        std::vector<Rational> rhs(3, Rational(0));
        rhs[j] = 1;
        auto col = solve(inv, rhs);
        for (std::size_t i = 0; i < 3; ++i) t(i, j) = col[i];
      }
    } catch (const std::domain_error&) {
      continue;
    }
    // f on the new line at infinity: F(x, y, 0).
    Form<Rational> ff = f.compose(t);
    Poly<Rational> at_inf = ff.restrict_to_line(Point3<Rational>{1, 0, 0}, Point3<Rational>{0, 1, 0});
    if (is_zero(ff.coeff(ff.degree(), 0, 0))) continue;
    if (real_root_count(at_inf) != 0) continue;
    return t;
  }
  return std::nullopt;
}

}  // namespace

ConicSearchResult real_contact_conic_search(const Form<Rational>& f, const Point3<Rational>& e,
                                            int grid, std::uint64_t seed) {
  if (f.degree() != 4) throw InputError("the conic search needs a quartic");
  if (grid < 2) throw std::invalid_argument("the conic search needs at least two directions");
  if (!is_hyperbolic(f, e, 64, seed).hyperbolic)
    throw InputError("the quartic is not hyperbolic with respect to e");
  Rng rng(seed);
  auto chart = avoiding_chart(f, e, rng);
  ConicSearchResult res;
  if (!chart) {
    res.message = "no line avoiding the real curve was found";
    return res;
  }
  const Matrix<Rational>& t = *chart;
  Matrix<Rational> t_inv(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<Rational> rhs(3, Rational(0));
    rhs[j] = 1;
    auto col = solve(t, rhs);
    for (std::size_t i = 0; i < 3; ++i) t_inv(i, j) = col[i];
  }
  const Form<double> fnew = f.compose(t).normalized().convert<double>();
  Point3<Rational> enew = mat_point(t_inv, e);
  if (is_zero(enew[2])) throw InputError("e lies on the chosen line at infinity");
  V2 center{to_double(enew[0] / enew[2]), to_double(enew[1] / enew[2])};
  AffineQuartic q(fnew, center);

  // Scan directions over [0, pi]; the difference is odd under theta -> theta + pi.
  std::vector<ThetaEval> evals;
  for (int i = 0; i <= grid; ++i) {
    double theta = 3.141592653589793 * i / grid;
    ThetaEval ev = eval_theta(q, theta);
    res.trace.push_back({theta, ev.t1.lambda, ev.t2.lambda});
    evals.push_back(ev);
  }
  int bracket = -1;
  for (int i = 0; i <= grid; ++i) {
    if (!evals[i].ok) continue;
    if (std::fabs(evals[i].diff) <= 1e-12) {
      bracket = i;
      break;
    }
    if (i < grid && evals[i + 1].ok && evals[i].diff * evals[i + 1].diff < 0) {
      bracket = i;
      break;
    }
  }
  if (bracket < 0) {
    res.message = "no sign change of lambda1 - lambda2 on the scan";
    return res;
  }
  ThetaEval best = evals[bracket];
  double theta = res.trace[bracket].theta;
  if (std::fabs(best.diff) > 1e-12) {
    double a = theta, b = res.trace[bracket + 1].theta;
    double fa = best.diff;
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
      double m = 0.5 * (a + b);
      ThetaEval ev = eval_theta(q, m);
      if (!ev.ok) break;
      best = ev;
      theta = m;
      if (std::fabs(ev.diff) <= 1e-12) break;
      if (ev.diff * fa < 0) {
        b = m;
      } else {
        a = m;
        fa = ev.diff;
      }
    }
  }
  res.theta = theta;
  res.lambda = 0.5 * (best.t1.lambda + best.t2.lambda);

  // Homogeneous conic in chart coordinates, then in the original ones.
  const Pencil& pen = best.pen;
  V2 gg = pen.ggrad();
  Form<double> gl = Form<double>::linear(gg[0], gg[1], -(gg[0] * pen.p1[0] + gg[1] * pen.p1[1]));
  Form<double> l1 = Form<double>::linear(-pen.w[0], -pen.w[1], pen.c1);
  Form<double> l2 = Form<double>::linear(pen.w[0], pen.w[1], -pen.c2);
  Form<double> conic_new = gl * gl - res.lambda * (l1 * l2);
  Matrix<double> t_inv_d = t_inv.map<double>([](const Rational& v) { return to_double(v); });
  Matrix<double> t_d = t.map<double>([](const Rational& v) { return to_double(v); });
  res.conic = conic_new.compose(t_inv_d).normalized();

  // Tangency residuals along the conic's tangent line, in chart coordinates.
  const Form<double> qx = conic_new.partial(0), qy = conic_new.partial(1);
  auto add_contact = [&](const V2& p, bool inner) {
    Point3<double> ph{p[0], p[1], 1.0};
    V2 n{qx.eval(ph), qy.eval(ph)};
    double nn = std::hypot(n[0], n[1]);
    ConicContact c;
    c.inner = inner;
    Point3<double> tau{-n[1] / nn, n[0] / nn, 0.0};
    Poly<double> along = fnew.restrict_to_line(tau, ph);
    double cscale = conic_new.max_abs_coeff();
    c.residual = std::max({std::fabs(along.coeff(0)), std::fabs(along.coeff(1)),
                           std::fabs(conic_new.eval(ph)) / cscale});
    Point3<double> orig = mat_point(t_d, ph);
    double m = std::max({std::fabs(orig[0]), std::fabs(orig[1]), std::fabs(orig[2])});
    for (auto& v : orig) v /= m;
    c.point = orig;
    res.contacts.push_back(c);
  };
  add_contact(pen.p1, true);
  add_contact(pen.p2, true);
  add_contact(best.t1.point, false);
  add_contact(best.t2.point, false);
  res.success = true;
  for (const auto& c : res.contacts)
    if (!(c.residual <= 1e-8)) res.success = false;
  res.message = res.success ? "conic with four real contact points found"
                            : "tangency residual above 1e-8 at a contact point";
  return res;
}

// ---- instantiations -------------------------------------------------------------------------

#define HYPCURVE_INSTANTIATE(S)                                                                   \
  template Matrix<S> frame_for<S>(const Point3<S>&);                                              \
  template Form<S> wronskian<S>(const Form<S>&, const Form<S>&, const Point3<S>&);                \
  template FormMatrix<S> bezout_multi<S>(const Form<S>&, const Form<S>&, const Point3<S>&);       \
  template Matrix<S> bezout_at<S>(const Form<S>&, const Form<S>&, const Point3<S>&,               \
                                  const Point3<S>&);                                              \
  template HyperbolicityReport<S> is_hyperbolic<S>(const Form<S>&, const Point3<S>&, int,         \
                                                   std::uint64_t);                                \
  template InterlacerReport is_interlacer<S>(const Form<S>&, const Form<S>&, const Point3<S>&,    \
                                             int, std::uint64_t);

HYPCURVE_INSTANTIATE(Rational)
HYPCURVE_INSTANTIATE(Real)

#undef HYPCURVE_INSTANTIATE

template Matrix<double> frame_for<double>(const Point3<double>&);
template Form<double> wronskian<double>(const Form<double>&, const Form<double>&, const Point3<double>&);

}  // namespace hypcurve
