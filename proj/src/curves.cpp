#include "hypcurve/curves.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hypcurve/error.hpp"
#include "hypcurve/matrix.hpp"
#include "hypcurve/random.hpp"
#include "hypcurve/univariate.hpp"

namespace hypcurve {

namespace {

const Real& real_threshold() {
  static const Real v("1e-25");
  return v;
}
const Real& real_ambiguity() {
  static const Real v("1e-15");
  return v;
}

Real max_abs(const Point3<Real>& p) {
  Real m(0);
  for (const auto& v : p)
    if (abs_of(v) > m) m = abs_of(v);
  return m;
}

}  // namespace

// ---- points -------------------------------------------------------------------------------

ProjPoint make_point(const Point3<ComplexReal>& coords) {
  std::array<Real, 3> mod;
  Real best(0);
  for (int i = 0; i < 3; ++i) {
    mod[i] = coords[i].abs();
    if (mod[i] > best) best = mod[i];
  }
  if (is_zero(best)) throw std::invalid_argument("projective point with all coordinates zero");
  int pivot = 0;
  const Real tie = best * Real("1e-20");
  for (int i = 0; i < 3; ++i)
    if (mod[i] >= best - tie) pivot = i;  // later index wins on near ties
  ProjPoint p;
  const ComplexReal inv = ComplexReal(Real(1)) / coords[pivot];
  Real max_im(0);
  for (int i = 0; i < 3; ++i) {
    p.coords[i] = coords[i] * inv;
    if (abs_of(p.coords[i].im) > max_im) max_im = abs_of(p.coords[i].im);
  }
  p.coords[pivot] = ComplexReal(Real(1));
  if (max_im < real_threshold()) {
    p.real = true;
    for (auto& c : p.coords) c.im = Real(0);
  } else if (max_im < real_ambiguity()) {
    throw PrecisionExhausted("cannot decide whether an intersection point is real");
  }
  return p;
}

ProjPoint make_point(const Point3<Real>& coords) {
  return make_point(Point3<ComplexReal>{ComplexReal(coords[0]), ComplexReal(coords[1]),
                                        ComplexReal(coords[2])});
}

ProjPoint ProjPoint::conjugate() const {
  ProjPoint p = *this;
  for (auto& c : p.coords) c.im = -c.im;
  return p;
}

std::string ProjPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < 3; ++i) {
    if (i) os << " : ";
    char buf[96];
    if (real)
      std::snprintf(buf, sizeof buf, "%.12g", to_double(coords[i].re));
    else
      std::snprintf(buf, sizeof buf, "%.12g%+.12gi", to_double(coords[i].re),
                    to_double(coords[i].im));
    os << buf;
  }
  os << ")";
  return os.str();
}

Real point_distance(const ProjPoint& a, const ProjPoint& b) {
  Real d(0);
  for (int i = 0; i < 3; ++i) {
    Real v = (a.coords[i] - b.coords[i]).abs();
    if (v > d) d = v;
  }
  return d;
}

int IntersectionCycle::total_multiplicity() const {
  int n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

// ---- intersection cycles ------------------------------------------------------------------

namespace {

Rational resultant(const Poly<Rational>& a, const Poly<Rational>& b) {
  const int m = a.degree();
  const int n = b.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return Rational(1);
  Matrix<Rational> s(size, size);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s(r, r + i) = a.coeff(static_cast<std::size_t>(m - i));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s(n + r, r + i) = b.coeff(static_cast<std::size_t>(n - i));
  return determinant(s);
}

// Exact interpolation through (xs[i], ys[i]) via divided differences.
Poly<Rational> interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  Poly<Rational> p = Poly<Rational>::constant(ys[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    p = p * Poly<Rational>::linear(1, -xs[i]) + Poly<Rational>::constant(ys[i]);
  return p;
}

struct ShearAttempt {
  bool ok = false;
  std::string reason;
  IntersectionCycle cycle;
};

Real relative_residual(const Poly<ComplexReal>& p, const ComplexReal& y) {
  Real scale(0);
  Real ay = y.abs();
  if (ay < Real(1)) ay = Real(1);
  Real pw(1);
  for (const auto& c : p.coeffs()) {
    scale += c.abs() * pw;
    pw *= ay;
  }
  if (is_zero(scale)) return Real(0);
  return p.eval(y).abs() / scale;
}

ShearAttempt try_shear(const Form<Rational>& f, const Form<Rational>& g, const Matrix<Rational>& t) {
  ShearAttempt out;
  const Form<Rational> ff = f.compose(t);
  const Form<Rational> gg = g.compose(t);
  const int d = f.degree(), dg = g.degree();
  if (is_zero(ff.eval(Point3<Rational>{0, 1, 0})) || is_zero(gg.eval(Point3<Rational>{0, 1, 0}))) {
    out.reason = "projection center on a curve";
    return out;
  }
  const int n = d * dg;
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= n; ++k) {
    Rational x0(k - n / 2);
    Point3<Rational> dir{0, 1, 0}, base{x0, 0, 1};
    xs.push_back(x0);
    ys.push_back(resultant(ff.restrict_to_line(dir, base), gg.restrict_to_line(dir, base)));
  }
  Poly<Rational> res = interpolate(xs, ys);
  if (res.is_zero()) throw CommonComponentError("the curves share a common component");
  if (res.degree() != n) {
    out.reason = "intersection point on the line at infinity of the chart";
    return out;
  }
  std::vector<CyclePoint> pts;
  for (const auto& [factor, mult] : squarefree_decomposition(res)) {
    Poly<Real> fr = factor.map<Real>([](const Rational& q) { return to_real(q); });
    for (const auto& x0 : complex_roots(fr)) {
      Point3<ComplexReal> dir{ComplexReal(Real(0)), ComplexReal(Real(1)), ComplexReal(Real(0))};
      Point3<ComplexReal> base{x0, ComplexReal(Real(0)), ComplexReal(Real(1))};
      Poly<ComplexReal> py_f = ff.restrict_to_line<ComplexReal>(dir, base);
      Poly<ComplexReal> py_g = gg.restrict_to_line<ComplexReal>(dir, base);
      auto ys_g = complex_roots(py_g);
      std::size_t best = 0;
      std::vector<Real> resid;
      for (std::size_t j = 0; j < ys_g.size(); ++j) {
        resid.push_back(relative_residual(py_f, ys_g[j]));
        if (resid[j] < resid[best]) best = j;
      }
      if (resid[best] > Real("1e-30")) {
        out.reason = "no common root above a resultant root";
        return out;
      }
      for (std::size_t j = 0; j < ys_g.size(); ++j) {
        if (j == best) continue;
        Real scale = ys_g[best].abs();
        if (scale < Real(1)) scale = Real(1);
        if ((ys_g[j] - ys_g[best]).abs() > Real("1e-12") * scale && resid[j] < Real("1e-30")) {
          out.reason = "two intersection points share a projection";
          return out;
        }
      }
      const ComplexReal& y0 = ys_g[best];
      Point3<ComplexReal> local{x0, y0, ComplexReal(Real(1))};
      Point3<ComplexReal> orig;
      for (std::size_t i = 0; i < 3; ++i) {
        orig[i] = ComplexReal(Real(0));
        for (std::size_t j = 0; j < 3; ++j) orig[i] += ComplexReal(to_real(t(i, j))) * local[j];
      }
      pts.push_back({make_point(orig), mult});
    }
  }
  out.ok = true;
  out.cycle.points = std::move(pts);
  out.cycle.deg_f = d;
  out.cycle.deg_g = dg;
  return out;
}

}  // namespace

IntersectionCycle intersection_cycle(const Form<Rational>& f, const Form<Rational>& g,
                                     std::uint64_t seed) {
  if (f.is_zero() || g.is_zero()) throw InputError("intersection with the zero form");
  if (f.degree() == 0 || g.degree() == 0) {
    IntersectionCycle c;
    c.deg_f = f.degree();
    c.deg_g = g.degree();
    c.seed = seed;
    return c;
  }
  Rng rng(seed);
  std::string last;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Matrix<Rational> t = Matrix<Rational>::identity(3);
    if (attempt > 0 || seed != 0) {
      do {
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) t(i, j) = Rational(rng.uniform_int(-3, 3));
      } while (is_zero(determinant(t)));
    } else {
      // A fixed generic shear for the default seed.
      t(0, 1) = Rational(2, 7);
      t(2, 1) = Rational(3, 5);
      t(0, 2) = Rational(-1, 3);
      t(1, 2) = Rational(1, 4);
    }
    ShearAttempt a = try_shear(f, g, t);
    if (a.ok) {
      a.cycle.seed = seed;
      return a.cycle;
    }
    last = a.reason;
  }
  throw PrecisionExhausted("intersection cycle: no admissible shear found (" + last + ")");
}

IntersectionCycle intersection_cycle(const Form<Real>& f, const Form<Real>& g, std::uint64_t seed,
                                     const Real& cluster_tol) {
  IntersectionCycle exact = intersection_cycle(f.convert<Rational>(), g.convert<Rational>(), seed);
  IntersectionCycle out;
  out.deg_f = exact.deg_f;
  out.deg_g = exact.deg_g;
  out.seed = seed;
  std::vector<bool> used(exact.points.size(), false);
  for (std::size_t i = 0; i < exact.points.size(); ++i) {
    if (used[i]) continue;
    CyclePoint cp = exact.points[i];
    for (std::size_t j = i + 1; j < exact.points.size(); ++j)
      if (!used[j] && point_distance(exact.points[i].point, exact.points[j].point) < cluster_tol) {
        used[j] = true;
        cp.multiplicity += exact.points[j].multiplicity;
      }
    out.points.push_back(cp);
  }
  return out;
}

bool cycles_match(const IntersectionCycle& a, const IntersectionCycle& b, const Real& tol) {
  if (a.points.size() != b.points.size()) return false;
  std::vector<bool> used(a.points.size(), false);
  for (const auto& pb : b.points) {
    bool found = false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      if (used[i] || a.points[i].multiplicity != pb.multiplicity) continue;
      if (point_distance(a.points[i].point, pb.point) <= tol) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---- classification -----------------------------------------------------------------------

ContactData classify_cycle(const IntersectionCycle& cycle, const Point3<Real>& e) {
  ContactData data;
  std::vector<bool> used(cycle.points.size(), false);
  for (std::size_t i = 0; i < cycle.points.size(); ++i) {
    const auto& cp = cycle.points[i];
    if (!cp.point.real) continue;
    used[i] = true;
    if (cp.multiplicity % 2 != 0)
      throw NotRealContactError("real intersection point " + cp.point.str() +
                                " has odd multiplicity " + std::to_string(cp.multiplicity) +
                                "; g does not interlace f");
    data.contacts.push_back({cp.point, cp.multiplicity / 2});
    data.r += cp.multiplicity / 2;
  }
  for (std::size_t i = 0; i < cycle.points.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const ProjPoint target = cycle.points[i].point.conjugate();
    std::size_t partner = cycle.points.size();
    Real best("1e-20");
    for (std::size_t j = 0; j < cycle.points.size(); ++j) {
      if (used[j]) continue;
      Real dist = point_distance(cycle.points[j].point, target);
      if (dist < best) {
        best = dist;
        partner = j;
      }
    }
    if (partner == cycle.points.size() ||
        cycle.points[partner].multiplicity != cycle.points[i].multiplicity)
      throw InconsistentInputError("intersection cycle is not closed under conjugation");
    used[partner] = true;
    const ProjPoint& q = cycle.points[i].point;
    Point3<Real> line = cross(q.real_part(), q.imag_part());
    Real scale = max_abs(line);
    for (auto& v : line) v /= scale;
    Real at_e = dot(line, e);
    if (abs_of(at_e) < Real("1e-30") * max_abs(e))
      throw InconsistentInputError("a conjugate-pair line passes through e");
    if (at_e < 0)
      for (auto& v : line) v = -v;
    for (int k = 0; k < cycle.points[i].multiplicity; ++k) {
      data.pairs.push_back({q, cycle.points[partner].point});
      data.lines.push_back(linear_form(line));
      ++data.s;
    }
  }
  return data;
}

Point3<Real> line_meet(const Form<Real>& a, const Form<Real>& b) {
  Point3<Real> la{a.coeff(1, 0, 0), a.coeff(0, 1, 0), a.coeff(0, 0, 1)};
  Point3<Real> lb{b.coeff(1, 0, 0), b.coeff(0, 1, 0), b.coeff(0, 0, 1)};
  Point3<Real> p = cross(la, lb);
  Real m = max_abs(p);
  if (is_zero(m)) throw InconsistentInputError("intersecting identical lines");
  for (auto& v : p) v /= m;
  return p;
}

GenericityReport genericity_check(const Form<Real>& f, const ContactData& data) {
  GenericityReport rep;
  for (const auto& c : data.contacts) rep.all_points.push_back(c.point);
  for (const auto& pr : data.pairs) {
    rep.all_points.push_back(pr.q);
    rep.all_points.push_back(pr.q_bar);
  }
  const Real tol("1e-20");
  const auto& pts = rep.all_points;
  auto cdet = [](const Point3<ComplexReal>& a, const Point3<ComplexReal>& b,
                 const Point3<ComplexReal>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        if (cdet(pts[i].coords, pts[j].coords, pts[k].coords).abs() <= tol * Real(8)) {
          rep.g1 = false;
          rep.collinear_points.push_back({i, j, k});
          if (!pts[i].real || !pts[j].real || !pts[k].real) rep.g1_nonreal_violation = true;
        }
      }
  const auto& ls = data.lines;
  auto coeffs = [](const Form<Real>& l) {
    return Point3<Real>{l.coeff(1, 0, 0), l.coeff(0, 1, 0), l.coeff(0, 0, 1)};
  };
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      for (std::size_t k = j + 1; k < ls.size(); ++k) {
        Real det = dot(coeffs(ls[i]), cross(coeffs(ls[j]), coeffs(ls[k])));
        if (abs_of(det) <= tol * Real(8)) {
          rep.g2 = false;
          rep.concurrent_lines.push_back({i, j, k});
        }
      }
      Point3<Real> coeff_i = coeffs(ls[i]), coeff_j = coeffs(ls[j]);
      Point3<Real> sij = cross(coeff_i, coeff_j);
      Real m = max_abs(sij);
      if (is_zero(m)) {
        rep.g3 = false;
        rep.f_on_line_meets.push_back({i, j});
        continue;
      }
      for (auto& v : sij) v /= m;
      Real bound(0);
      for (const auto& c : f.coeffs()) bound += abs_of(c);
      if (abs_of(f.eval(sij)) <= tol * bound) {
        rep.g3 = false;
        rep.f_on_line_meets.push_back({i, j});
      }
    }
  return rep;
}

bool jacobian_vanishes(const Form<Real>& f, const Form<Real>& g, const ProjPoint& p,
                       const Real& tol) {
  Point3<ComplexReal> gf, gg;
  for (int v = 0; v < 3; ++v) {
    gf[v] = f.partial(v).eval<ComplexReal>(p.coords);
    gg[v] = g.partial(v).eval<ComplexReal>(p.coords);
  }
  auto norm = [](const Point3<ComplexReal>& a) {
    return sqrt_of(a[0].norm2() + a[1].norm2() + a[2].norm2());
  };
  Point3<ComplexReal> c{gf[1] * gg[2] - gf[2] * gg[1], gf[2] * gg[0] - gf[0] * gg[2],
                        gf[0] * gg[1] - gf[1] * gg[0]};
  Real denom = norm(gf) * norm(gg);
  if (is_zero(denom)) return true;
  return norm(c) <= tol * denom;
}

// ---- local branches -----------------------------------------------------------------------

namespace {

Poly<Real> truncate(const Poly<Real>& p, int order) {
  std::vector<Real> c;
  for (int i = 0; i <= order && i <= p.degree(); ++i) c.push_back(p.coeff(static_cast<std::size_t>(i)));
  return Poly<Real>(std::move(c));
}

// f evaluated on power series arguments, truncated at t^order.
Poly<Real> substitute_series(const Form<Real>& f, const std::array<Poly<Real>, 3>& args, int order) {
  const int d = f.degree();
  std::array<std::vector<Poly<Real>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].assign(static_cast<std::size_t>(d) + 1, Poly<Real>::constant(Real(1)));
    for (int e = 1; e <= d; ++e) pw[v][e] = truncate(pw[v][e - 1] * args[v], order);
  }
  Poly<Real> acc;
  std::size_t idx = 0;
  for (int i = d; i >= 0; --i)
    for (int k = 0; k <= d - i; ++k, ++idx) {
      if (is_zero(f.coeffs()[idx])) continue;
      acc += f.coeffs()[idx] * truncate(pw[0][i] * truncate(pw[1][d - i - k] * pw[2][k], order), order);
    }
  return acc;
}

std::array<Poly<Real>, 3> branch_args(const BranchExpansion& b, int order) {
  std::array<Poly<Real>, 3> args;
  args[b.chart] = Poly<Real>::constant(Real(1));
  args[b.param_var] = Poly<Real>::linear(Real(1), b.center_param);
  std::vector<Real> w{b.center_dep};
  for (int k = 0; k < order && k < static_cast<int>(b.coeffs.size()); ++k)
    w.push_back(b.coeffs[static_cast<std::size_t>(k)]);
  args[b.dep_var] = Poly<Real>(w);
  return args;
}

}  // namespace

Point3<Real> BranchExpansion::at(const Real& t) const {
  Point3<Real> p;
  p[chart] = Real(1);
  p[param_var] = center_param + t;
  Real w = center_dep, pw = t;
  for (const auto& c : coeffs) {
    w += c * pw;
    pw *= t;
  }
  p[dep_var] = w;
  return p;
}

BranchExpansion branch_expansion(const Form<Real>& f, const Point3<Real>& p, int order) {
  if (order < 0) throw std::invalid_argument("branch order must be nonnegative");
  ProjPoint cp = make_point(p);
  if (!cp.real) throw InputError("branch expansion needs a real point");
  Point3<Real> q = cp.real_part();
  BranchExpansion b;
  for (int i = 0; i < 3; ++i)
    if (q[i] == Real(1)) b.chart = i;
  Real fscale = f.max_abs_coeff();
  if (abs_of(f.eval(q)) > Real("1e-20") * fscale * Real(f.coeffs().size()))
    throw InputError("branch expansion: point is not on the curve");
  int free_vars[2], n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != b.chart) free_vars[n++] = i;
  Real g0 = f.partial(free_vars[0]).eval(q);
  Real g1 = f.partial(free_vars[1]).eval(q);
  if (abs_of(g0) <= Real("1e-30") * fscale && abs_of(g1) <= Real("1e-30") * fscale)
    throw SingularPointError("branch expansion at a singular point " + cp.str());
  b.dep_var = abs_of(g0) >= abs_of(g1) ? free_vars[0] : free_vars[1];
  b.param_var = b.dep_var == free_vars[0] ? free_vars[1] : free_vars[0];
  b.center_param = q[b.param_var];
  b.center_dep = q[b.dep_var];
  const Real fw = b.dep_var == free_vars[0] ? g0 : g1;
  for (int k = 1; k <= order; ++k) {
    b.coeffs.push_back(Real(0));
    Poly<Real> series = substitute_series(f, branch_args(b, k), k);
    b.coeffs.back() = -series.coeff(static_cast<std::size_t>(k)) / fw;
  }
  return b;
}

std::vector<std::vector<Real>> branch_vanishing_conditions(const BranchExpansion& branch, int deg,
                                                           int order) {
  const auto ex = exponents(deg);
  std::vector<std::vector<Real>> rows(static_cast<std::size_t>(order),
                                      std::vector<Real>(ex.size(), Real(0)));
  if (order == 0) return rows;
  const auto args = branch_args(branch, order - 1);
  for (std::size_t m = 0; m < ex.size(); ++m) {
    Form<Real> mono = Form<Real>::monomial(ex[m].i, ex[m].j, ex[m].k);
    Poly<Real> s = substitute_series(mono, args, order - 1);
    for (int r = 0; r < order; ++r) rows[static_cast<std::size_t>(r)][m] = s.coeff(static_cast<std::size_t>(r));
  }
  return rows;
}

}  // namespace hypcurve
