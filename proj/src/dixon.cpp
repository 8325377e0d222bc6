#include "hypcurve/dixon.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/linalg.hpp"
#include "hypcurve/random.hpp"
#include "hypcurve/univariate.hpp"

namespace hypcurve {

namespace {

Real max_abs(const Point3<Real>& p) {
  Real m(0);
  for (const auto& v : p)
    if (abs_of(v) > m) m = abs_of(v);
  return m;
}

Point3<Real> unit(Point3<Real> p) {
  Real m = max_abs(p);
  for (auto& v : p) v /= m;
  return p;
}

Point3<Real> to_real_point(const Point3<Rational>& p) { return {to_real(p[0]), to_real(p[1]), to_real(p[2])}; }

/// |f(p)| for a unit point, relative to the largest coefficient.
Real rel_value(const Form<Real>& f, const Point3<Real>& p) {
  Real scale = f.max_abs_coeff();
  if (is_zero(scale)) return Real(0);
  return abs_of(f.eval(unit(p))) / scale;
}

Form<Real> product(const std::vector<Form<Real>>& forms, std::size_t skip_a = SIZE_MAX,
                   std::size_t skip_b = SIZE_MAX) {
  Form<Real> acc = Form<Real>::constant(Real(1));
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (i != skip_a && i != skip_b) acc *= forms[i];
  return acc;
}

Real poly_norm(const Poly<Real>& p) { return sqrt_of(p.coeff_norm2()); }

Point3<Real> random_point(Rng& rng) {
  auto v = rng.sphere();
  return {Real(v[0]), Real(v[1]), Real(v[2])};
}

std::string point_str(const Point3<Real>& p) {
  std::ostringstream os;
  os << "(" << to_double(p[0]) << ":" << to_double(p[1]) << ":" << to_double(p[2]) << ")";
  return os.str();
}

/// The s_ij correction: b + sum_{i<j} alpha_ij h_ij f with the result vanishing at every s_ij.
Form<Real> kill_s_points(const DixonState& st, const Form<Real>& b) {
  Form<Real> out = b;
  const auto& lines = st.data.lines;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Point3<Real>& p = st.s_points[i][j];
      Form<Real> hij = st.l0 * product(lines, i, j);
      Real denom = hij.eval(p) * st.f.eval(p);
      out += (-b.eval(p) / denom) * (hij * st.f);
    }
  return out;
}

/// Real points A, B spanning l_i with q_i proportional to A + iB, rotated so that f h / l_i does
/// not vanish at B (the parameter t = infinity).
std::pair<Point3<Real>, Point3<Real>> line_frame(const DixonState& st, std::size_t i) {
  const Point3<Real> a = st.data.pairs[i].q.real_part();
  const Point3<Real> b = st.data.pairs[i].q.imag_part();
  Form<Real> hif = product(st.data.lines, i) * st.f;
  const double angles[] = {0.0, 0.7, 1.3, 2.1, 2.6, 0.35};
  for (double th : angles) {
    Real c = cos(Real(th)), s = sin(Real(th));
    Point3<Real> a2, b2;
    for (int v = 0; v < 3; ++v) {
      a2[v] = c * a[v] + s * b[v];
      b2[v] = -s * a[v] + c * b[v];
    }
    if (rel_value(hif, b2) > Real("1e-6")) return {a2, b2};
  }
  throw PrecisionExhausted("no usable parametrization of l_i");
}

}  // namespace

// ---- step 1 ----------------------------------------------------------------------------------

std::vector<Form<Real>> contact_basis(const Form<Real>& f, const Form<Real>& g,
                                      const ContactData& data, std::uint64_t seed) {
  const int d = f.degree();
  const int dm = d - 1;
  if (g.degree() != dm) throw InputError("g must have degree deg f - 1");
  const std::size_t nmon = monomial_count(dm);
  std::vector<std::vector<Real>> rows;
  for (const auto& c : data.contacts) {
    if (c.half_multiplicity > 2)
      throw GenericityFailure("contact at " + c.point.str() + " has half-multiplicity " +
                              std::to_string(c.half_multiplicity) + "; at most 2 is supported");
    auto branch = branch_expansion(f, c.point.real_part(), c.half_multiplicity);
    for (auto& row : branch_vanishing_conditions(branch, dm, c.half_multiplicity)) {
      Real n = norm2(row);
      for (auto& v : row) v /= n;
      rows.push_back(std::move(row));
    }
  }
  const std::size_t expected = static_cast<std::size_t>(d + data.s);

  Matrix<Real> cond(rows.size(), nmon);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nmon; ++j) cond(i, j) = rows[i][j];
  Matrix<Real> z = numeric_nullspace(cond, Real("1e-40"));
  if (z.cols() != expected)
    throw PrecisionExhausted("contact conditions leave a space of dimension " +
                             std::to_string(z.cols()) + ", expected " + std::to_string(expected));

  std::vector<Real> gn = g.coeffs();
  {
    Real n = norm2(gn);
    for (auto& v : gn) v /= n;
  }
  Real g_res(0);
  for (const auto& row : rows) {
    Real acc(0);
    for (std::size_t j = 0; j < nmon; ++j) acc += row[j] * gn[j];
    if (abs_of(acc) > g_res) g_res = abs_of(acc);
  }
  if (g_res > Real("1e-30"))
    throw InconsistentInputError("g does not vanish to the required order at the contacts (residual " +
                                 to_string(g_res) + ")");

  // Gram-Schmidt with pivoting: g first, then the nullspace columns with the largest remainders.
  std::vector<std::vector<Real>> ortho{gn};
  std::vector<std::vector<Real>> cand(z.cols(), std::vector<Real>(nmon));
  for (std::size_t c = 0; c < z.cols(); ++c)
    for (std::size_t r = 0; r < nmon; ++r) cand[c][r] = z(r, c);
  auto project_out = [&](std::vector<Real>& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ortho) {
        Real dp(0);
        for (std::size_t r = 0; r < nmon; ++r) dp += q[r] * v[r];
        for (std::size_t r = 0; r < nmon; ++r) v[r] -= dp * q[r];
      }
  };
  std::vector<std::vector<Real>> completion;
  while (completion.size() + 1 < expected) {
    std::size_t best = 0;
    Real best_norm(-1);
    for (std::size_t c = 0; c < cand.size(); ++c) {
      project_out(cand[c]);
      Real n = norm2(cand[c]);
      if (n > best_norm) {
        best_norm = n;
        best = c;
      }
    }
    if (best_norm < Real("1e-30")) throw PrecisionExhausted("basis completion lost rank");
    std::vector<Real> v = cand[best];
    for (auto& x : v) x /= best_norm;
    ortho.push_back(v);
    completion.push_back(std::move(v));
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(best));
  }

  // Seeded rotation of the completion.
  const std::size_t k = completion.size();
  std::vector<Form<Real>> basis{g};
  if (k > 0) {
    Rng rng(seed ^ 0xB0B5EEDULL);
    Matrix<Real> gauss(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gauss(i, j) = Real(rng.normal());
    Matrix<Real> q = orthonormalize_columns(gauss);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Real> v(nmon, Real(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < nmon; ++r) v[r] += q(i, j) * completion[i][r];
      basis.emplace_back(dm, std::move(v));
    }
  }
  return basis;
}

// ---- step 2 ----------------------------------------------------------------------------------

namespace {

Matrix<Real> noether_matrix(const Form<Real>& f, const Form<Real>& g, int deg_b, int deg_c) {
  if (g.degree() != f.degree() - 1) throw InputError("g must have degree deg f - 1");
  if (deg_c < 0) throw InputError("Noether solve needs deg f + deg h >= 2");
  Matrix<Real> mg = multiplication_matrix(g, deg_b);
  Matrix<Real> mf = multiplication_matrix(f, deg_c);
  Matrix<Real> m(mg.rows(), mg.cols() + mf.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < mg.cols(); ++c) m(r, c) = mg(r, c);
    for (std::size_t c = 0; c < mf.cols(); ++c) m(r, mg.cols() + c) = -mf(r, c);
  }
  return m;
}

}  // namespace

NoetherSolver::NoetherSolver(const Form<Real>& f, const Form<Real>& g, const Form<Real>& h)
    : f_(f),
      g_(g),
      h_(h),
      deg_b_(f.degree() + h.degree() - 1),
      deg_c_(f.degree() + h.degree() - 2),
      solver_(noether_matrix(f, g, deg_b_, deg_c_), Real("1e-40")) {}

NoetherSolver::Solution NoetherSolver::solve(const Form<Real>& a_k, const Form<Real>& a_l) const {
  if (a_k.degree() != f_.degree() - 1 || a_l.degree() != f_.degree() - 1)
    throw InputError("basis forms must have degree deg f - 1");
  Form<Real> rhs = h_ * a_k * a_l;
  std::vector<Real> x = solver_.solve(rhs.coeffs());
  const std::size_t nb = monomial_count(deg_b_);
  Form<Real> b(deg_b_, std::vector<Real>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nb)));
  Form<Real> c(deg_c_, std::vector<Real>(x.begin() + static_cast<std::ptrdiff_t>(nb), x.end()));
  Form<Real> diff = b * g_ - c * f_ - rhs;
  Real denom = sqrt_of(rhs.coeff_norm2());
  Real residual = is_zero(denom) ? sqrt_of(diff.coeff_norm2()) : sqrt_of(diff.coeff_norm2()) / denom;
  return {b, c, residual};
}

Form<Real> noether_solve(const Form<Real>& f, const Form<Real>& g, const Form<Real>& h,
                         const Form<Real>& a_k, const Form<Real>& a_l) {
  NoetherSolver solver(f, g, h);
  auto sol = solver.solve(a_k, a_l);
  if (sol.residual > Real("1e-28"))
    throw GenericityFailure("Noether system has no solution (residual " + to_string(sol.residual) + ")");
  return sol.b;
}

// ---- steps 3 and 4 ---------------------------------------------------------------------------

void adjust_diagonal(DixonState& st, std::size_t k, DixonDiagnostics& diag) {
  const auto& lines = st.data.lines;
  st.touch.resize(st.size());
  st.touch[k].clear();
  if (lines.empty()) {
    st.c[k][k] = st.b[k][k];
    return;
  }
  Form<Real> b = kill_s_points(st, st.b[k][k]);
  Form<Real> c = b;
  const Poly<Real> t2p1(std::vector<Real>{Real(1), Real(0), Real(1)});
  for (std::size_t i = 0; i < lines.size(); ++i) {
    // On l_i the points A + tB with q_i = A + iB, so q_i, conj(q_i) sit at t = i, -i.
    const auto [a, bp] = line_frame(st, i);
    Form<Real> hif = product(lines, i) * st.f;
    Poly<Real> big_f = hif.restrict_to_line(bp, a);
    Poly<Real> big_b = b.restrict_to_line(bp, a);
    if (big_f.degree() != hif.degree())
      throw PrecisionExhausted("line parametrization meets f at its point at infinity");
    auto [p, rem_f] = divmod(big_f, t2p1);
    if (poly_norm(rem_f) > Real("1e-30") * poly_norm(big_f))
      throw InternalConsistencyError("f h / l_i does not vanish at the conjugate pair on l_i");
    auto [bt, rem_b] = divmod(big_b, p);
    Real rb = poly_norm(big_b) > 0 ? poly_norm(rem_b) / poly_norm(big_b) : Real(0);
    if (rb > Real("1e-20"))
      throw PrecisionExhausted("b_kk does not vanish at the known points of l_i (residual " +
                               to_string(rb) + ")");
    const Real b0 = bt.coeff(0), b1 = bt.coeff(1), b2 = bt.coeff(2);
    // b~ + alpha (t^2 + 1) is degenerate for two alphas; the larger one gives a nonnegative square.
    const Real alpha = (-(b2 + b0) + sqrt_of((b2 - b0) * (b2 - b0) + b1 * b1)) / 2;
    const Real kappa = b2 + alpha;
    const Real c0 = b0 + alpha;
    Real u, t;
    if (kappa >= c0) {
      u = 2 * kappa;
      t = -b1;
    } else {
      u = -b1;
      t = 2 * c0;
    }
    Point3<Real> touch{u * a[0] + t * bp[0], u * a[1] + t * bp[1], u * a[2] + t * bp[2]};
    st.touch[k].push_back(unit(touch));
    c += alpha * hif;
  }

  // Double root and sign checks on every line.
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto [a, bp] = line_frame(st, i);
    const Point3<Real>& tp = st.touch[k][i];
    const Point3<Real>& other = max_abs(cross(tp, a)) > max_abs(cross(tp, bp)) ? a : bp;
    Poly<Real> local = c.restrict_to_line(other, tp);
    Real scale = c.max_abs_coeff() * max_abs(other);
    Real res = std::max(abs_of(local.coeff(0)), abs_of(local.coeff(1))) / scale;
    if (res > diag.double_root_residual) diag.double_root_residual = res;
    if (res > Real("1e-10"))
      throw PrecisionExhausted("c_kk has no double root on l_i (residual " + to_string(res) + ")");
    Form<Real> weight = product(lines, i) * st.f;
    const Real le = lines[i].eval(st.e);
    Real tol = Real("1e-20") * c.max_abs_coeff() * weight.max_abs_coeff();
    for (int sidx = 0; sidx < 16; ++sidx) {
      const double phi = 3.141592653589793 * (sidx + 0.5) / 16.0;
      Point3<Real> pt{a[0] * cos(Real(phi)) + bp[0] * sin(Real(phi)),
                      a[1] * cos(Real(phi)) + bp[1] * sin(Real(phi)),
                      a[2] * cos(Real(phi)) + bp[2] * sin(Real(phi))};
      pt = unit(pt);
      if (c.eval(pt) * weight.eval(pt) * le < -tol)
        throw PrecisionExhausted("sign condition of c_kk fails on l_i at " + point_str(pt));
    }
  }
  st.c[k][k] = c;
}

void adjust_offdiagonal(DixonState& st, std::size_t k, std::size_t l, DixonDiagnostics& diag) {
  const auto& lines = st.data.lines;
  if (lines.empty()) {
    st.c[k][l] = st.c[l][k] = st.b[k][l];
    return;
  }
  Form<Real> b = kill_s_points(st, st.b[k][l]);
  Form<Real> c = b;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Form<Real> hif = product(lines, i) * st.f;
    const Point3<Real>& tk = st.touch[k][i];
    c += (-b.eval(tk) / hif.eval(tk)) * hif;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Real res = rel_value(c, st.touch[l][i]);
    if (res > diag.lemma_residual) diag.lemma_residual = res;
    if (res > Real("1e-8"))
      throw GenericityFailure("c_kl forced to vanish at t_ki does not vanish at t_li on line " +
                              std::to_string(i) + " (residual " + to_string(res) + ")");
  }
  st.c[k][l] = st.c[l][k] = c;
}

// ---- step 5 ----------------------------------------------------------------------------------

void assemble(DixonState& st, DixonDiagnostics& diag) {
  const std::size_t n = st.size();
  for (std::size_t k = 0; k < n; ++k) st.c[0][k] = st.c[k][0] = st.h * st.basis[k];
  st.n.assign(n, std::vector<Form<Real>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) st.n[i][j] = st.c[i][j];

  Form<Real> fh = st.f * st.h;
  const int deg = 2 * (st.d() + st.s() - 1);
  Divider<Real> div(fh, deg);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = i1 + 1; i2 < n; ++i2)
      for (std::size_t j1 = i1; j1 < n; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
          if (j1 == i1 && j2 < i2) continue;
          Form<Real> t1 = st.n[i1][j1] * st.n[i2][j2];
          Form<Real> t2 = st.n[i1][j2] * st.n[i2][j1];
          Form<Real> minor = t1 - t2;
          // Residual relative to the two products, so cancellation to zero is not amplified.
          Real scale = std::max(sqrt_of(t1.coeff_norm2()), sqrt_of(t2.coeff_norm2()));
          Real res = is_zero(scale) ? Real(0)
                                    : div.divide(minor).residual * sqrt_of(minor.coeff_norm2()) / scale;
          if (res > diag.minor_residual) diag.minor_residual = res;
          if (res > Real("1e-10"))
            throw InternalConsistencyError(
                "2x2 minor (rows " + std::to_string(i1 + 1) + "," + std::to_string(i2 + 1) +
                "; cols " + std::to_string(j1 + 1) + "," + std::to_string(j2 + 1) +
                ") of N is not divisible by f h (residual " + to_string(res) + ")");
        }
}

// ---- step 6 ----------------------------------------------------------------------------------

Real step6_check(const DixonState& st, int samples, std::uint64_t seed) {
  const Form<Real>& c22 = st.n.at(1).at(1);
  Form<Real> fh = st.f * st.h;
  Form<Real> dfh = fh.dir_derivative(st.e);
  const Real scale = c22.max_abs_coeff() * dfh.max_abs_coeff();
  Real worst(1);
  auto visit = [&](Point3<Real> p) {
    p = unit(p);
    Real v = c22.eval(p) * dfh.eval(p) / scale;
    if (v < worst) worst = v;
  };
  Rng rng(seed ^ 0x57E96ULL);
  for (int s = 0; s < samples; ++s) {
    Point3<Real> v = random_point(rng);
    Poly<Real> p = st.f.restrict_to_line(st.e, v);
    for (const auto& root : complex_roots(p))
      visit({v[0] + root.re * st.e[0], v[1] + root.re * st.e[1], v[2] + root.re * st.e[2]});
  }
  for (std::size_t i = 0; i < st.data.lines.size(); ++i) {
    const Point3<Real> a = st.data.pairs[i].q.real_part();
    const Point3<Real> b = st.data.pairs[i].q.imag_part();
    for (int s = 0; s < 16; ++s) {
      Real phi = Real(rng.uniform(0.0, 3.141592653589793));
      visit({a[0] * cos(phi) + b[0] * sin(phi), a[1] * cos(phi) + b[1] * sin(phi),
             a[2] * cos(phi) + b[2] * sin(phi)});
    }
  }
  return worst;
}

// ---- step 7 ----------------------------------------------------------------------------------

LinearPencil<Real> extract_pencil(const DixonState& st, DixonDiagnostics& diag, std::uint64_t seed) {
  const std::size_t n = st.size();
  const Form<Real> fh = st.f * st.h;
  const Real fh_scale = fh.max_abs_coeff();
  const std::size_t npts = std::max<std::size_t>(10 * n * n, 40);
  Rng rng(seed ^ 0xADC0FFEEULL);
  std::vector<Point3<Real>> pts;
  std::vector<Matrix<Real>> vals;
  while (pts.size() < npts) {
    Point3<Real> p = random_point(rng);
    Real w = fh.eval(p);
    if (abs_of(w) < Real("1e-3") * fh_scale) continue;
    Matrix<Real> np = evaluate<Real, Real>(st.n, p);
    Matrix<Real> adj = determinant_numeric(np) * inverse_numeric(np);
    Real denom = pow(w, static_cast<int>(n) - 2);
    pts.push_back(p);
    vals.push_back((Real(1) / denom) * adj);
  }
  Matrix<Real> x(npts, 3);
  for (std::size_t r = 0; r < npts; ++r)
    for (int v = 0; v < 3; ++v) x(r, v) = pts[r][v];
  LeastSquaresSolver<Real> ls(x, Real("1e-40"));
  Matrix<Real> ma(n, n), mb(n, n), mc(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<Real> y(npts);
      for (std::size_t r = 0; r < npts; ++r) y[r] = (vals[r](i, j) + vals[r](j, i)) / 2;
      auto coef = ls.solve(y);
      ma(i, j) = ma(j, i) = coef[0];
      mb(i, j) = mb(j, i) = coef[1];
      mc(i, j) = mc(j, i) = coef[2];
    }
  LinearPencil<Real> pencil(ma, mb, mc);
  Real vmax(0), err(0);
  for (std::size_t r = 0; r < npts; ++r) {
    Matrix<Real> fit = pencil.at(pts[r]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        vmax = std::max(vmax, Real(abs_of(vals[r](i, j))));
        err = std::max(err, Real(abs_of(vals[r](i, j) - fit(i, j))));
      }
  }
  diag.fit_residual = err / vmax;
  if (diag.fit_residual > Real("1e-10"))
    throw PrecisionExhausted("scaled adjugate of N is not linear (fit residual " +
                             to_string(diag.fit_residual) + ")");

  const Real scale = Real(1) / pencil.max_abs();
  pencil = LinearPencil<Real>(scale * pencil.a, scale * pencil.b, scale * pencil.c);
  auto eig = symmetric_eigenvalues(pencil.at(st.e));
  if (eig.back() < 0) {
    pencil = LinearPencil<Real>(Real(-1) * pencil.a, Real(-1) * pencil.b, Real(-1) * pencil.c);
    eig = symmetric_eigenvalues(pencil.at(st.e));
  }
  diag.min_eigenvalue = eig.front();

  // gamma from one point, checked at fifty more.
  Point3<Real> p0 = pts.front();
  Real gamma = determinant_numeric(pencil.at(p0)) / fh.eval(p0);
  if (abs_of(gamma) < Real("1e-20"))
    throw DegenerateRepresentation("det M vanishes identically (gamma = " + to_string(gamma) + ")");
  Real worst(0), size(0);
  for (int s = 0; s < 50; ++s) {
    Point3<Real> p = random_point(rng);
    Real lhs = determinant_numeric(pencil.at(p));
    Real rhs = gamma * fh.eval(p);
    worst = std::max(worst, Real(abs_of(lhs - rhs)));
    size = std::max(size, Real(abs_of(rhs)));
  }
  diag.det_residual = worst / size;
  pencil.gamma = gamma;
  if (diag.min_eigenvalue <= 0)
    throw InternalConsistencyError("M(e) is not positive definite (min eigenvalue " +
                                   to_string(diag.min_eigenvalue) + ")");
  if (gamma <= 0) throw InternalConsistencyError("gamma is negative although M(e) is definite");
  return pencil;
}

// ---- input checks ----------------------------------------------------------------------------

bool is_smooth(const Form<Rational>& f, std::uint64_t seed) {
  if (f.degree() <= 1) return !f.is_zero();
  const Form<Rational> fx = f.partial(0), fy = f.partial(1), fz = f.partial(2);
  const Form<Real> partials[3] = {fx.convert<Real>().normalized(), fy.convert<Real>().normalized(),
                                  fz.convert<Real>().normalized()};
  Rng rng(seed ^ 0x5300711ULL);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Rational a = attempt == 0 ? Rational(0) : rng.rational(20, 7);
    Rational b = attempt == 0 ? Rational(0) : rng.rational(20, 7);
    Form<Rational> u = fx + a * fz;
    Form<Rational> v = fy + b * fz;
    if (u.is_zero() || v.is_zero()) continue;
    IntersectionCycle cyc;
    try {
      cyc = intersection_cycle(u, v, seed + static_cast<std::uint64_t>(attempt));
    } catch (const CommonComponentError&) {
      continue;
    }
    for (const auto& cp : cyc.points) {
      bool singular = true;
      for (const auto& pf : partials) {
        if (pf.is_zero()) continue;
        if (pf.eval<ComplexReal>(cp.point.coords).abs() > Real("1e-30")) singular = false;
      }
      if (singular) return false;
    }
    return true;
  }
  throw PrecisionExhausted("could not separate the partial derivatives of f");
}

namespace {

DixonResult run_construction(const Form<Rational>& f, const Form<Rational>& g,
                             const Point3<Rational>& e, const DixonOptions& options,
                             DixonDiagnostics diag) {
  const Point3<Real> er = to_real_point(e);
  IntersectionCycle cycle = intersection_cycle(f, g, options.seed);
  DixonState st;
  st.f = f.convert<Real>();
  st.g = g.convert<Real>().normalized();
  st.e = er;
  st.data = classify_cycle(cycle, er);
  if (st.data.s > 0) {
    GenericityReport gen = genericity_check(st.f, st.data);
    if (gen.g1_nonreal_violation || !gen.g2 || !gen.g3) {
      std::string what = "genericity failure:";
      if (gen.g1_nonreal_violation) what += " three intersection points on a line;";
      if (!gen.g2) what += " three lines l_i through one point;";
      if (!gen.g3) what += " f vanishes at an intersection of two lines l_i;";
      throw GenericityFailure(what);
    }
  }
  st.basis = contact_basis(st.f, st.g, st.data, options.seed);
  const std::size_t n = st.size();
  const std::size_t s = st.data.lines.size();
  st.h = product(st.data.lines);

  st.s_points.assign(s, std::vector<Point3<Real>>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (i != j) st.s_points[i][j] = line_meet(st.data.lines[i], st.data.lines[j]);

  Rng rng(options.seed ^ 0x10E0ULL);
  st.l0 = Form<Real>::linear(Real(1), Real(0), Real(0));
  for (int attempt = 0; attempt < 5; ++attempt) {
    Form<Real> cand = Form<Real>::linear(to_real(rng.rational(9, 1)), to_real(rng.rational(9, 1)),
                                         to_real(rng.rational(9, 1)));
    bool ok = !cand.is_zero();
    for (std::size_t i = 0; i < s && ok; ++i)
      for (std::size_t j = i + 1; j < s && ok; ++j)
        if (rel_value(cand, st.s_points[i][j]) < Real("1e-3")) ok = false;
    if (ok) {
      st.l0 = cand;
      break;
    }
    if (attempt == 4) throw GenericityFailure("no auxiliary line avoids the points s_ij");
  }

  st.r_points.assign(s, {});
  const Poly<Real> t2p1(std::vector<Real>{Real(1), Real(0), Real(1)});
  for (std::size_t i = 0; i < s; ++i) {
    const auto [a, b] = line_frame(st, i);
    Poly<Real> rest = st.f.restrict_to_line(b, a) / t2p1;
    if (rest.degree() < 1) continue;
    for (const auto& t : complex_roots(rest)) {
      Point3<ComplexReal> p;
      for (int v = 0; v < 3; ++v) p[v] = ComplexReal(a[v]) + t * ComplexReal(b[v]);
      st.r_points[i].push_back(make_point(p));
    }
  }

  st.b.assign(n, std::vector<Form<Real>>(n));
  st.c.assign(n, std::vector<Form<Real>>(n));
  NoetherSolver solver(st.f, st.g, st.h);
  for (std::size_t k = 0; k < n; ++k) st.b[0][k] = st.b[k][0] = st.h * st.basis[k];
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      auto sol = solver.solve(st.basis[k], st.basis[l]);
      if (sol.residual > diag.noether_residual) diag.noether_residual = sol.residual;
      if (sol.residual > Real("1e-28"))
        throw GenericityFailure("Noether system has no solution (residual " +
                                to_string(sol.residual) + ")");
      st.b[k][l] = st.b[l][k] = sol.b;
    }

  for (std::size_t k = 1; k < n; ++k) adjust_diagonal(st, k, diag);
  st.touch[0].clear();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) adjust_offdiagonal(st, k, l, diag);
  assemble(st, diag);

  diag.step6_min = step6_check(st, 64, options.seed);
  if (diag.step6_min < Real("-1e-12"))
    throw InternalConsistencyError("c_22 does not interlace f h (min " + to_string(diag.step6_min) +
                                   ")");

  LinearPencil<Real> pencil = extract_pencil(st, diag, options.seed);
  if (static_cast<int>(n) != dixon_size(st.d(), st.data.r))
    throw InternalConsistencyError("pencil size violates m = (d^2 + d - 2r)/2");

  // g divides the principal minor M_{1,1}; h divides every M_{1,l}.
  FormMatrix<Real> mf = pencil.forms();
  auto minor = [&](std::size_t row, std::size_t col) {
    FormMatrix<Real> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      std::vector<Form<Real>> r;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) r.push_back(mf[i][j]);
      sub.push_back(std::move(r));
    }
    return determinant(sub);
  };
  diag.g_minor_residual = divide(minor(0, 0), st.g).residual;
  if (s > 0)
    for (std::size_t l = 0; l < n; ++l)
      diag.h_minor_residual = std::max(diag.h_minor_residual, divide(minor(0, l), st.h).residual);
  if (diag.g_minor_residual > Real("1e-10") || diag.h_minor_residual > Real("1e-10"))
    throw InternalConsistencyError("minor divisibility of M fails (g: " +
                                   to_string(diag.g_minor_residual) +
                                   ", h: " + to_string(diag.h_minor_residual) + ")");
  return {pencil, st, diag};
}

}  // namespace

DixonResult dixon_pipeline(const Form<Rational>& f_in, const Form<Rational>& g_in,
                           const Point3<Rational>& e, const DixonOptions& options) {
  const int d = f_in.degree();
  if (d < 2) throw InputError("f must have degree at least 2");
  if (g_in.degree() != d - 1) throw InputError("g must have degree deg f - 1");
  if (g_in.is_zero()) throw InputError("g is the zero form");
  const Rational fe = f_in.eval(e);
  const Rational ge = g_in.eval(e);
  if (is_zero(fe)) throw InputError("f(e) = 0; e is not in the hyperbolicity region");
  if (is_zero(ge)) throw InputError("g(e) = 0; g cannot interlace f with respect to e");
  DixonDiagnostics diag;
  diag.f_flipped = fe < 0;
  diag.g_flipped = ge < 0;
  const Form<Rational> f = diag.f_flipped ? -f_in : f_in;
  const Form<Rational> g = diag.g_flipped ? -g_in : g_in;

  if (!is_hyperbolic(f, e, 64, options.seed).hyperbolic)
    throw InputError("f is not hyperbolic with respect to e");
  if (!is_smooth(f, options.seed)) throw SingularPointError("V(f) is singular");
  if (!is_interlacer(f, g, e, options.interlacer_samples, options.seed).is_interlacer)
    throw InputError("g does not interlace f with respect to e");

  if (!options.perturb) return run_construction(f, g, e, options, diag);

  std::vector<Form<Rational>> candidates{g};
  const Form<Rational> gn = (Rational(1) / g.max_abs_coeff()) * g;
  const Form<Rational> df = f.dir_derivative(e);
  const Form<Rational> dfn = (Rational(1) / df.max_abs_coeff()) * df;
  std::vector<Rational> eps;
  for (int k = 3; k <= 8; ++k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(k));
    eps.emplace_back(mpz_class(1), den);
  }
  std::string last;
  for (std::size_t i = 0; i <= eps.size(); ++i) {
    Form<Rational> cand = g;
    if (i > 0) {
      const Rational& ep = eps[i - 1];
      cand = (Rational(1) - ep) * gn + ep * dfn;
      diag.perturbation = ep;
    }
    try {
      return run_construction(f, cand, e, options, diag);
    } catch (const GenericityFailure& err) {
      last = err.what();
    }
  }
  throw GenericityFailure("genericity fails for every perturbation of g; last error: " + last);
}

}  // namespace hypcurve
