#include "hypcurve/rationalize.hpp"

#include <algorithm>

#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/random.hpp"

namespace hypcurve {

namespace {

std::size_t pair_count(std::size_t n) { return n * (n + 1) / 2; }

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  // Row-major upper triangle.
  return i * n - i * (i - 1) / 2 + (j - i);
}

template <class S>
std::vector<S> flatten(const CertifiedPencil<S>& mp) {
  const std::size_t n = mp.pencil.size;
  const std::size_t p = pair_count(n);
  std::vector<S> x(3 * p + n, S(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t k = pair_index(n, i, j);
      x[k] = mp.pencil.a(i, j);
      x[p + k] = mp.pencil.b(i, j);
      x[2 * p + k] = mp.pencil.c(i, j);
    }
  for (std::size_t i = 0; i < n; ++i) x[3 * p + i] = mp.v[i];
  return x;
}

RationalPencil unflatten(int d, std::size_t n, const std::vector<Rational>& x) {
  const std::size_t p = pair_count(n);
  Matrix<Rational> a(n, n), b(n, n), c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t k = pair_index(n, i, j);
      a(i, j) = a(j, i) = x[k];
      b(i, j) = b(j, i) = x[p + k];
      c(i, j) = c(j, i) = x[2 * p + k];
    }
  RationalPencil rp;
  rp.degree = d;
  rp.pencil = LinearPencil<Rational>(a, b, c);
  rp.m = monomial_vector<Rational>(d - 1);
  rp.v.assign(x.begin() + static_cast<std::ptrdiff_t>(3 * p), x.end());
  return rp;
}

/// det(M)/f keeps one strict sign at e and at sampled points of C(f,e).
bool cofactor_sign_ok(const Form<Rational>& f, const Point3<Rational>& e, const Form<Rational>& cof,
                      int samples, std::uint64_t seed) {
  const int s0 = sign_of(cof.eval(e));
  if (s0 == 0) return false;
  if (cof.degree() == 0) return true;
  Rng rng(seed ^ 0xC0FAULL);
  int accepted = 0;
  for (int trial = 0; trial < 20 * samples && accepted < samples; ++trial) {
    Rational rho(1, 1 << (trial % 6));
    Point3<Rational> a;
    for (int v = 0; v < 3; ++v) a[v] = e[v] + rho * rng.rational(64, 64);
    if (!cone_contains(f, e, a)) continue;
    ++accepted;
    if (sign_of(cof.eval(a)) != s0) return false;
  }
  return true;
}

}  // namespace

CertifiedPencil<Real> kernel_relation(const DixonResult& res) {
  const auto& st = res.state;
  const int d = st.d();
  const std::size_t n = res.pencil.size;
  if (st.basis.size() != n) throw InternalConsistencyError("basis and pencil sizes differ");

  // delta from M a = f delta, row by row.
  const FormMatrix<Real> mf = res.pencil.forms();
  std::vector<Real> delta(n);
  const Real ff = st.f.coeff_norm2();
  Real worst(0), scale(0);
  std::vector<Form<Real>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    Form<Real> row(d);
    for (std::size_t j = 0; j < n; ++j) row += mf[i][j] * st.basis[j];
    Real dp(0);
    for (std::size_t k = 0; k < row.size(); ++k) dp += row.coeffs()[k] * st.f.coeffs()[k];
    delta[i] = dp / ff;
    rows[i] = row;
    scale = std::max(scale, row.max_abs_coeff());
  }
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, (rows[i] - delta[i] * st.f).max_abs_coeff());
  if (is_zero(scale) || worst / scale > Real("1e-10"))
    throw InternalConsistencyError("the relation M a = f delta fails (residual " +
                                   to_string(is_zero(scale) ? Real(1) : Real(worst / scale)) + ")");
  CertifiedPencil<Real> out;
  out.degree = d;
  out.pencil = res.pencil;
  out.m = st.basis;
  out.v = delta;
  return out;
}

CertifiedPencil<Real> monomial_form(const DixonResult& res) {
  const auto& st = res.state;
  if (st.data.r != 0) throw InputError("the monomial form needs a full-size pencil (r = 0)");
  const int d = st.d();
  const std::size_t n = res.pencil.size;
  if (n != monomial_count(d - 1)) throw InternalConsistencyError("pencil size is not d(d+1)/2");
  const CertifiedPencil<Real> rel = kernel_relation(res);

  Matrix<Real> k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i, j) = st.basis[i].coeffs()[j];
  const Matrix<Real> kt = k.transpose();
  CertifiedPencil<Real> out;
  out.degree = d;
  out.m = monomial_vector<Real>(d - 1);
  out.pencil = LinearPencil<Real>(kt * res.pencil.a * k, kt * res.pencil.b * k, kt * res.pencil.c * k,
                                  res.pencil.gamma);
  // Exact symmetry after the products.
  for (Matrix<Real>* m : {&out.pencil.a, &out.pencil.b, &out.pencil.c})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Real avg = ((*m)(i, j) + (*m)(j, i)) / 2;
        (*m)(i, j) = (*m)(j, i) = avg;
      }
  out.v = mat_vec(kt, rel.v);
  return out;
}

Matrix<Rational> identity_conditions(const Form<Rational>& f) {
  const int d = f.degree();
  if (d < 1) throw InputError("f must have positive degree");
  const auto ex = exponents(d - 1);
  const std::size_t n = ex.size();
  const std::size_t p = pair_count(n);
  const std::size_t nd = monomial_count(d);
  Matrix<Rational> m(n * nd, 3 * p + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = pair_index(n, i, j);
      m(i * nd + monomial_index(d, ex[j].i + 1, ex[j].k), k) += 1;
      m(i * nd + monomial_index(d, ex[j].i, ex[j].k), p + k) += 1;
      m(i * nd + monomial_index(d, ex[j].i, ex[j].k + 1), 2 * p + k) += 1;
    }
    for (std::size_t mu = 0; mu < nd; ++mu) m(i * nd + mu, 3 * p + i) = -f.coeffs()[mu];
  }
  return m;
}

std::optional<RationalPencil> kernel_certificate(const Form<Rational>& f, const LinearPencil<Rational>& p) {
  const int d = f.degree();
  const std::size_t n = p.size;
  const auto ex = exponents(d - 1);
  const std::size_t nm = ex.size();
  const std::size_t nd = monomial_count(d);
  // Unknowns: coefficients of m_0 .. m_{n-1}, then v.
  Matrix<Rational> cond(n * nd, n * nm + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational* lin[3] = {&p.a(i, j), &p.b(i, j), &p.c(i, j)};
      for (std::size_t k = 0; k < nm; ++k) {
        const std::size_t col = j * nm + k;
        cond(i * nd + monomial_index(d, ex[k].i + 1, ex[k].k), col) += *lin[0];
        cond(i * nd + monomial_index(d, ex[k].i, ex[k].k), col) += *lin[1];
        cond(i * nd + monomial_index(d, ex[k].i, ex[k].k + 1), col) += *lin[2];
      }
    }
    for (std::size_t mu = 0; mu < nd; ++mu) cond(i * nd + mu, n * nm + i) = -f.coeffs()[mu];
  }
  const Matrix<Rational> z = nullspace(cond);
  for (std::size_t c = 0; c < z.cols(); ++c) {
    bool v_nonzero = false;
    for (std::size_t i = 0; i < n; ++i) v_nonzero = v_nonzero || !is_zero(z(n * nm + i, c));
    if (!v_nonzero) continue;
    RationalPencil rp;
    rp.degree = d;
    rp.pencil = p;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> coeffs(nm);
      for (std::size_t k = 0; k < nm; ++k) coeffs[k] = z(j * nm + k, c);
      rp.m.emplace_back(d - 1, coeffs);
    }
    for (std::size_t i = 0; i < n; ++i) rp.v.push_back(z(n * nm + i, c));
    return rp;
  }
  return std::nullopt;
}

bool verify_rational(const Form<Rational>& f, const Point3<Rational>& e, const RationalPencil& rp,
                     int samples, std::uint64_t seed) {
  const int d = f.degree();
  const std::size_t n = rp.pencil.size;
  if (rp.degree != d || rp.m.size() != n || rp.v.size() != n) return false;
  if (!rp.pencil.is_symmetric()) return false;
  const auto& m = rp.m;
  for (const auto& mj : m)
    if (mj.degree() != d - 1 && !mj.is_zero()) return false;
  bool any = false;
  for (const auto& mj : m) any = any || !mj.is_zero();
  if (!any) return false;
  const FormMatrix<Rational> mf = rp.pencil.forms();
  for (std::size_t i = 0; i < n; ++i) {
    Form<Rational> row = -(rp.v[i] * f);
    for (std::size_t j = 0; j < n; ++j) row += mf[i][j] * m[j];
    if (!row.is_zero()) return false;
  }
  if (!is_positive_definite(rp.pencil.at(e))) return false;
  const Form<Rational> det = determinant(mf);
  if (det.is_zero()) return false;
  auto div = divide(det, f);
  if (!is_zero(div.residual)) return false;
  return cofactor_sign_ok(f, e, div.quotient, samples, seed);
}

RationalizeReport rationalize_pencil(const Form<Rational>& f, const Point3<Rational>& e,
                                     const CertifiedPencil<Real>& solution, const Rational& max_den,
                                     int doublings, std::uint64_t seed) {
  const int d = f.degree();
  const std::size_t n = monomial_count(d - 1);
  if (solution.pencil.size != n || solution.v.size() != n || solution.degree != d)
    throw InputError("float solution does not match the size d(d+1)/2");
  if (max_den < 1) throw InputError("max denominator must be at least 1");

  const RrefResult red = rref(identity_conditions(f));
  const std::size_t unknowns = red.reduced.cols();
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < unknowns; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  const std::vector<Real> xf = flatten(solution);
  RationalizeReport rep;
  rep.parameters = free_cols.size();
  Rational bound = max_den;
  for (int attempt = 0; attempt <= doublings; ++attempt, bound *= 2) {
    std::vector<Rational> x(unknowns, Rational(0));
    for (auto c : free_cols) x[c] = best_rational_approximation(xf[c], bound);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
      Rational acc(0);
      for (auto c : free_cols)
        if (!is_zero(red.reduced(r, c))) acc -= red.reduced(r, c) * x[c];
      x[red.pivot_cols[r]] = acc;
    }
    double dist = 0;
    for (std::size_t c = 0; c < unknowns; ++c)
      dist = std::max(dist, std::fabs(to_double(Real(to_real(x[c]) - xf[c]))));
    rep.nearest = unflatten(d, n, x);
    rep.distance = dist;
    rep.max_den_used = bound;
    rep.attempts = attempt + 1;
    if (!is_positive_definite(rep.nearest.pencil.at(e))) {
      rep.message = "M(e) is not positive definite after rounding with denominators <= " + bound.get_str();
      continue;
    }
    if (!verify_rational(f, e, rep.nearest, 40, seed)) {
      rep.message = "rounded pencil fails verification with denominators <= " + bound.get_str();
      continue;
    }
    rep.success = true;
    rep.result = rep.nearest;
    rep.message = "ok";
    return rep;
  }
  return rep;
}

}  // namespace hypcurve
