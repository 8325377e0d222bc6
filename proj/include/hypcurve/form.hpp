#pragma once

// Homogeneous ternary forms in x, y, z with dense coefficient storage.
//
// Monomials of degree d are stored in graded lex order (x > y > z): x^d, x^{d-1}y, x^{d-1}z,
// x^{d-2}y^2, ... The term x^i y^j z^k lives at index (d-i)(d-i+1)/2 + k.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypcurve/linalg.hpp"
#include "hypcurve/matrix.hpp"
#include "hypcurve/poly.hpp"
#include "hypcurve/scalar.hpp"

namespace hypcurve {

struct Exponent {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

inline std::size_t monomial_count(int degree) {
  return degree < 0 ? 0 : static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
}

inline std::size_t monomial_index(int degree, int i, int k) {
  const int a = degree - i;
  return static_cast<std::size_t>(a * (a + 1) / 2 + k);
}

/// All exponents of the given degree in storage order.
inline std::vector<Exponent> exponents(int degree) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(degree));
  for (int i = degree; i >= 0; --i)
    for (int k = 0; k <= degree - i; ++k) out.push_back({i, degree - i - k, k});
  return out;
}

template <class S>
using Point3 = std::array<S, 3>;

template <class S>
class Form {
 public:
  Form() : Form(0) {}
  /// The zero form of the given degree.
  explicit Form(int degree) : degree_(degree), c_(monomial_count(degree), S(0)) {
    if (degree < 0) throw std::invalid_argument("form degree must be nonnegative");
  }
  Form(int degree, std::vector<S> coeffs) : degree_(degree), c_(std::move(coeffs)) {
    if (c_.size() != monomial_count(degree))
      throw std::invalid_argument("form coefficient count does not match degree");
  }

  static Form constant(const S& c) {
    Form f(0);
    f.c_[0] = c;
    return f;
  }
  static Form linear(const S& a, const S& b, const S& c) { return Form(1, {a, b, c}); }
  /// The coordinate form x (v = 0), y (v = 1) or z (v = 2).
  static Form variable(int v) {
    Form f(1);
    f.c_[static_cast<std::size_t>(v)] = S(1);
    return f;
  }
  static Form monomial(int i, int j, int k, const S& c = S(1)) {
    Form f(i + j + k);
    f.coeff(i, j, k) = c;
    return f;
  }

  int degree() const { return degree_; }
  std::size_t size() const { return c_.size(); }
  const std::vector<S>& coeffs() const { return c_; }
  std::vector<S>& coeffs() { return c_; }

  S& coeff(int i, int j, int k) { return c_[checked_index(i, j, k)]; }
  const S& coeff(int i, int j, int k) const { return c_[checked_index(i, j, k)]; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!hypcurve::is_zero(v)) return false;
    return true;
  }

  S max_abs_coeff() const {
    S best(0);
    for (const auto& v : c_) {
      S a = abs_of(v);
      if (a > best) best = a;
    }
    return best;
  }

  S coeff_norm2() const {
    S acc(0);
    for (const auto& v : c_) acc += v * v;
    return acc;
  }

  /// Scaled to unit max-absolute coefficient (the zero form is returned unchanged).
  Form normalized() const {
    S m = max_abs_coeff();
    if (hypcurve::is_zero(m)) return *this;
    return (S(1) / m) * (*this);
  }

  template <class T>
  Form<T> convert() const {
    std::vector<T> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(lift<T>(v));
    return Form<T>(degree_, std::move(out));
  }

  template <class T = S>
  T eval(const Point3<T>& p) const {
    std::array<std::vector<T>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].assign(static_cast<std::size_t>(degree_) + 1, T(1));
      for (int e = 1; e <= degree_; ++e) pw[v][e] = pw[v][e - 1] * p[v];
    }
    T acc(0);
    std::size_t idx = 0;
    for (int i = degree_; i >= 0; --i) {
      for (int k = 0; k <= degree_ - i; ++k, ++idx) {
        if (hypcurve::is_zero(c_[idx])) continue;
        acc += lift<T>(c_[idx]) * pw[0][i] * pw[1][degree_ - i - k] * pw[2][k];
      }
    }
    return acc;
  }

  /// Partial derivative with respect to variable v.
  Form partial(int v) const {
    if (degree_ == 0) return Form(0);
    Form out(degree_ - 1);
    std::size_t idx = 0;
    for (int i = degree_; i >= 0; --i) {
      for (int k = 0; k <= degree_ - i; ++k, ++idx) {
        if (hypcurve::is_zero(c_[idx])) continue;
        int e[3] = {i, degree_ - i - k, k};
        if (e[v] == 0) continue;
        S factor = c_[idx] * lift<S>(Rational(e[v]));
        --e[v];
        out.coeff(e[0], e[1], e[2]) += factor;
      }
    }
    return out;
  }

  /// Directional derivative sum_i dir_i * df/dx_i.
  Form dir_derivative(const Point3<S>& dir) const {
    if (degree_ == 0) throw std::invalid_argument("directional derivative of a constant form");
    Form out(degree_ - 1);
    for (int v = 0; v < 3; ++v)
      if (!hypcurve::is_zero(dir[v])) out += dir[v] * partial(v);
    return out;
  }

  /// t -> f(t*dir + base).
  template <class T = S>
  Poly<T> restrict_to_line(const Point3<T>& dir, const Point3<T>& base) const {
    std::array<std::vector<Poly<T>>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      Poly<T> lin = Poly<T>::linear(dir[v], base[v]);
      pw[v].assign(static_cast<std::size_t>(degree_) + 1, Poly<T>::constant(T(1)));
      for (int e = 1; e <= degree_; ++e) pw[v][e] = pw[v][e - 1] * lin;
    }
    Poly<T> acc;
    std::size_t idx = 0;
    for (int i = degree_; i >= 0; --i) {
      for (int k = 0; k <= degree_ - i; ++k, ++idx) {
        if (hypcurve::is_zero(c_[idx])) continue;
        acc += lift<T>(c_[idx]) * (pw[0][i] * pw[1][degree_ - i - k] * pw[2][k]);
      }
    }
    return acc;
  }

  /// The form x -> f(T x), i.e. each variable x_i replaced by sum_j T(i, j) x_j.
  Form compose(const Matrix<S>& t) const {
    if (t.rows() != 3 || t.cols() != 3) throw std::invalid_argument("compose needs a 3x3 matrix");
    std::array<std::vector<Form>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      Form lin = linear(t(v, 0), t(v, 1), t(v, 2));
      pw[v].assign(static_cast<std::size_t>(degree_) + 1, constant(S(1)));
      for (int e = 1; e <= degree_; ++e) pw[v][e] = pw[v][e - 1] * lin;
    }
    Form acc(degree_);
    std::size_t idx = 0;
    for (int i = degree_; i >= 0; --i) {
      for (int k = 0; k <= degree_ - i; ++k, ++idx) {
        if (hypcurve::is_zero(c_[idx])) continue;
        acc += c_[idx] * (pw[0][i] * pw[1][degree_ - i - k] * pw[2][k]);
      }
    }
    return acc;
  }

  Form& operator+=(const Form& o) { return *this = *this + o; }
  Form& operator-=(const Form& o) { return *this = *this - o; }
  Form& operator*=(const Form& o) { return *this = *this * o; }

  friend Form operator+(const Form& a, const Form& b) {
    if (a.degree_ != b.degree_) {
      if (b.is_zero()) return a;
      if (a.is_zero()) return b;
      throw std::invalid_argument("adding forms of different degrees");
    }
    Form r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Form operator-(const Form& a) {
    Form r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Form operator-(const Form& a, const Form& b) { return a + (-b); }
  friend Form operator*(const S& s, const Form& a) {
    Form r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend Form operator*(const Form& a, const Form& b) {
    Form r(a.degree_ + b.degree_);
    const auto ea = exponents(a.degree_);
    const auto eb = exponents(b.degree_);
    for (std::size_t p = 0; p < ea.size(); ++p) {
      if (hypcurve::is_zero(a.c_[p])) continue;
      for (std::size_t q = 0; q < eb.size(); ++q) {
        if (hypcurve::is_zero(b.c_[q])) continue;
        r.c_[monomial_index(r.degree_, ea[p].i + eb[q].i, ea[p].k + eb[q].k)] += a.c_[p] * b.c_[q];
      }
    }
    return r;
  }
  friend bool operator==(const Form& a, const Form& b) {
    if (a.degree_ != b.degree_) return a.is_zero() && b.is_zero();
    return a.c_ == b.c_;
  }

  Form pow(int n) const {
    Form r = constant(S(1));
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// Human-readable expression in the syntax accepted by parse_form.
  std::string str() const {
    std::string out;
    std::size_t idx = 0;
    for (int i = degree_; i >= 0; --i) {
      for (int k = 0; k <= degree_ - i; ++k, ++idx) {
        if (hypcurve::is_zero(c_[idx])) continue;
        std::string coef = to_string(c_[idx]);
        bool negative = !coef.empty() && coef[0] == '-';
        if (negative) coef.erase(0, 1);
        if (out.empty())
          out += negative ? "-" : "";
        else
          out += negative ? " - " : " + ";
        std::string mono;
        const int e[3] = {i, degree_ - i - k, k};
        const char* names = "xyz";
        for (int v = 0; v < 3; ++v) {
          if (e[v] == 0) continue;
          if (!mono.empty()) mono += "*";
          mono += names[v];
          if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        if (mono.empty())
          out += coef;
        else if (coef == "1")
          out += mono;
        else
          out += coef + "*" + mono;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::size_t checked_index(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i + j + k != degree_)
      throw std::out_of_range("exponent does not match form degree");
    return monomial_index(degree_, i, k);
  }

  int degree_;
  std::vector<S> c_;
};

// ---- division -----------------------------------------------------------------------------

template <class S>
struct DivisionResult {
  Form<S> quotient;
  S residual;  // ||f - q g|| / ||f|| on normalized coefficients; exactly zero when divisible
  bool divisible(const S& tol) const { return residual <= tol; }
};

/// Coefficient matrix of q -> q*g for q of degree deg_q.
template <class S>
Matrix<S> multiplication_matrix(const Form<S>& g, int deg_q) {
  const int deg_f = deg_q + g.degree();
  const auto eq = exponents(deg_q);
  const auto eg = exponents(g.degree());
  Matrix<S> m(monomial_count(deg_f), eq.size());
  for (std::size_t c = 0; c < eq.size(); ++c)
    for (std::size_t p = 0; p < eg.size(); ++p) {
      const S& v = g.coeffs()[p];
      if (is_zero(v)) continue;
      m(monomial_index(deg_f, eq[c].i + eg[p].i, eq[c].k + eg[p].k), c) += v;
    }
  return m;
}

namespace detail {

inline DivisionResult<Rational> divide_exact(const Form<Rational>& f, const Form<Rational>& g) {
  const int dq = f.degree() - g.degree();
  // Division with remainder in the graded lex order; storage order is that order.
  std::size_t lead_g = 0;
  while (is_zero(g.coeffs()[lead_g])) ++lead_g;
  const auto eg = exponents(g.degree());
  const auto ef = exponents(f.degree());
  Form<Rational> rem = f;
  Form<Rational> quo(dq);
  bool divisible = true;
  for (std::size_t idx = 0; idx < ef.size(); ++idx) {
    if (is_zero(rem.coeffs()[idx])) continue;
    const Exponent& lt = ef[idx];
    const Exponent& lg = eg[lead_g];
    if (lt.i < lg.i || lt.j < lg.j || lt.k < lg.k) {
      divisible = false;
      break;
    }
    Rational c = rem.coeffs()[idx] / g.coeffs()[lead_g];
    quo.coeff(lt.i - lg.i, lt.j - lg.j, lt.k - lg.k) += c;
    rem -= Form<Rational>::monomial(lt.i - lg.i, lt.j - lg.j, lt.k - lg.k, c) * g;
  }
  if (divisible) return {quo, Rational(0)};
  // Not divisible: exact least-squares quotient via the normal equations.
  Matrix<Rational> a = multiplication_matrix(g, dq);
  Matrix<Rational> at = a.transpose();
  std::vector<Rational> rhs(a.cols(), Rational(0));
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) rhs[c] += a(r, c) * f.coeffs()[r];
  std::vector<Rational> q = solve(at * a, rhs);
  Form<Rational> qf(dq, q);
  Form<Rational> diff = f - qf * g;
  Real rel = sqrt_of(to_real(diff.coeff_norm2())) / sqrt_of(to_real(f.coeff_norm2()));
  Rational residual = exact_rational(rel);
  if (is_zero(residual)) residual = Rational(1, 1000000000);
  return {qf, residual};
}

}  // namespace detail

/// Reuses one factorization of the multiplication-by-g map for many dividends of one degree.
template <class S>
class Divider {
 public:
  Divider(const Form<S>& g, int deg_f)
      : g_(nonzero(g).normalized()),
        g_scale_(g.max_abs_coeff()),
        deg_q_(deg_f - g.degree()),
        solver_(multiplication_matrix(g_, deg_f - g.degree()), epsilon_of<S>() * S(64)) {
    if (deg_q_ < 0) throw std::invalid_argument("dividend degree below divisor degree");
  }

  DivisionResult<S> divide(const Form<S>& f) const {
    if (f.degree() != deg_q_ + g_.degree())
      throw std::invalid_argument("dividend degree does not match the divider");
    S f_scale = f.max_abs_coeff();
    if (is_zero(f_scale)) return {Form<S>(deg_q_), S(0)};
    Form<S> fn = (S(1) / f_scale) * f;
    Form<S> qn(deg_q_, solver_.solve(fn.coeffs()));
    Form<S> diff = fn - qn * g_;
    S residual = sqrt_of(diff.coeff_norm2()) / sqrt_of(fn.coeff_norm2());
    return {(f_scale / g_scale_) * qn, residual};
  }

 private:
  static const Form<S>& nonzero(const Form<S>& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero form");
    return g;
  }

  Form<S> g_;
  S g_scale_;
  int deg_q_;
  LeastSquaresSolver<S> solver_;
};

/// Quotient of f by g: exact multivariate division over Q, least squares otherwise.
template <class S>
DivisionResult<S> divide(const Form<S>& f, const Form<S>& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero form");
  if (f.degree() < g.degree()) throw std::invalid_argument("dividend degree below divisor degree");
  if constexpr (is_exact_v<S>) {
    return detail::divide_exact(f, g);
  } else {
    return Divider<S>(g, f.degree()).divide(f);
  }
}

// ---- matrices of forms --------------------------------------------------------------------

template <class S>
using FormMatrix = std::vector<std::vector<Form<S>>>;

/// Determinant of a square matrix of forms by Laplace expansion over column subsets.
template <class S>
Form<S> determinant(const FormMatrix<S>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Form<S>::constant(S(1));
  if (n > 20) throw std::invalid_argument("form matrix too large for expansion");
  std::vector<std::optional<Form<S>>> dp(std::size_t{1} << n);
  dp[0] = Form<S>::constant(S(1));
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const int row = __builtin_popcountll(mask) - 1;
    std::optional<Form<S>> acc;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << j);
      // Sign from the number of chosen columns after j.
      const int after = __builtin_popcountll(rest >> j);
      if (!dp[rest] || m[row][j].is_zero()) continue;
      Form<S> term = m[row][j] * *dp[rest];
      if (after % 2 == 1) term = -term;
      acc = acc ? *acc + term : term;
    }
    dp[mask] = acc;
  }
  const auto& full = dp.back();
  if (!full) {
    int deg = 0;
    for (std::size_t i = 0; i < n; ++i) deg += m[i][i].degree();
    return Form<S>(deg);
  }
  return *full;
}

template <class S>
FormMatrix<S> transpose(const FormMatrix<S>& m) {
  if (m.empty()) return m;
  FormMatrix<S> t(m[0].size(), std::vector<Form<S>>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

template <class S, class T = S>
Matrix<T> evaluate(const FormMatrix<S>& m, const Point3<T>& p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  Matrix<T> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m[i][j].template eval<T>(p);
  return out;
}

/// The ternary form x^T v for a vector of coefficients.
template <class S>
Form<S> linear_form(const Point3<S>& v) {
  return Form<S>::linear(v[0], v[1], v[2]);
}

template <class S>
S dot(const Point3<S>& a, const Point3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
Point3<S> cross(const Point3<S>& a, const Point3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// ---- text syntax --------------------------------------------------------------------------

/// Parses an expression such as "x^3 + 2*x^2*y - x*z^2" (integers, decimals, fractions,
/// parentheses, ^ with integer exponents). Throws ParseError unless the result is homogeneous.
Form<Rational> parse_form(const std::string& text);

}  // namespace hypcurve
