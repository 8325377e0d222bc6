#pragma once

// Dense univariate polynomials, coefficients in ascending degree.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypcurve/scalar.hpp"

namespace hypcurve {

template <class S>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const S& c) { return Poly(std::vector<S>{c}); }
  static Poly monomial(std::size_t n, const S& c) {
    std::vector<S> v(n + 1, S(0));
    v[n] = c;
    return Poly(std::move(v));
  }
  /// The linear polynomial a*t + b.
  static Poly linear(const S& a, const S& b) { return Poly(std::vector<S>{b, a}); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
  S lead() const { return c_.empty() ? S(0) : c_.back(); }

  template <class T = S>
  T eval(const T& t) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= t;
      acc += lift<T>(c_[i]);
    }
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<S> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * lift<S>(Rational(static_cast<long>(i)));
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (c_.empty()) return *this;
    S inv = S(1) / c_.back();
    return inv * (*this);
  }

  template <class T, class F>
  Poly<T> map(F&& f) const {
    std::vector<T> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return Poly<T>(std::move(out));
  }

  /// Coefficient vector norm (Euclidean).
  S coeff_norm2() const {
    S acc(0);
    for (const auto& v : c_) acc += v * v;
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<S> out(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<S> out(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (hypcurve::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  friend Poly operator*(const S& s, const Poly& a) {
    std::vector<S> out(a.c_);
    for (auto& v : out) v *= s;
    return Poly(std::move(out));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder of long division (b must be nonzero).
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<S> rem(a.c_);
    const std::size_t db = b.c_.size() - 1;
    std::vector<S> quo(a.c_.size() - db, S(0));
    const S lead_inv = S(1) / b.c_.back();
    for (std::size_t k = quo.size(); k-- > 0;) {
      S coef = rem[k + db] * lead_inv;
      quo[k] = coef;
      if (hypcurve::is_zero(coef)) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= coef * b.c_[j];
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (hypcurve::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      out += "(" + to_string(c_[i]) + ")";
      if (i >= 1) out += "*" + var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && hypcurve::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<S> c_;
};

/// Monic greatest common divisor over Q.
inline Poly<Rational> gcd(Poly<Rational> a, Poly<Rational> b) {
  while (!b.is_zero()) {
    Poly<Rational> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace hypcurve
