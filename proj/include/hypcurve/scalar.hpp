#pragma once

// Scalar types: exact rationals (GMP) and configurable-precision binary floats (MPFR).

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

namespace hypcurve {

using Rational = mpq_class;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Default working precision in bits; HYPCURVE_PRECISION overrides it when set (read once).
unsigned default_precision_bits();

/// Precision of the current thread's newly created Real values, in bits.
unsigned current_precision_bits();

/// Precision carried by a particular value, in bits.
unsigned precision_bits(const Real& x);

/// Sets the working precision of the calling thread for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

// ---- conversions -------------------------------------------------------------------------

Real to_real(const Rational& q);
inline Real to_real(const Real& x) { return x; }
inline Real to_real(double x) { return Real(x); }

/// Exact value of a binary float as a rational (every finite MPFR value is dyadic).
Rational exact_rational(const Real& x);
inline Rational exact_rational(const Rational& q) { return q; }
Rational exact_rational(double x);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(const Real& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Parses integers, fractions "p/q" and decimals "1.25e-3" into an exact rational.
Rational parse_rational(const std::string& text);

/// Decimal rendering with enough digits to round-trip at the value's precision.
std::string to_string(const Real& x);
std::string to_string(const Rational& q);
std::string to_string(double x);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational best_rational_approximation(const Real& x, const Rational& max_den);

template <class S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<S, Real>) {
    return to_real(q);
  } else {
    return q.get_d();
  }
}

template <class S>
S scalar_cast(const Real& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return exact_rational(x);
  } else if constexpr (std::is_same_v<S, Real>) {
    return x;
  } else {
    return to_double(x);
  }
}

// ---- generic helpers over Rational / Real / double ---------------------------------------

inline Rational abs_of(const Rational& q) { return abs(q); }
inline Real abs_of(const Real& x) { return boost::multiprecision::abs(x); }
inline double abs_of(double x) { return std::fabs(x); }

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Real& x) { return x.sign(); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Real& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

/// Machine epsilon for the working precision; zero for exact scalars.
template <class S>
S epsilon_of() {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(0);
  } else if constexpr (std::is_same_v<S, Real>) {
    return std::numeric_limits<Real>::epsilon();
  } else {
    return std::numeric_limits<double>::epsilon();
  }
}

inline Real sqrt_of(const Real& x) { return boost::multiprecision::sqrt(x); }
inline double sqrt_of(double x) { return std::sqrt(x); }

// ---- minimal complex arithmetic over a real field ----------------------------------------

template <class T>
struct Complex {
  using value_type = T;
  T re{0};
  T im{0};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Complex conj() const { return {re, -im}; }
  T norm2() const { return re * re + im * im; }
  T abs() const { return sqrt_of(norm2()); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    T d = o.norm2();
    T r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
};

using ComplexReal = Complex<Real>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<Complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class T>
bool is_zero(const Complex<T>& c) {
  return is_zero(c.re) && is_zero(c.im);
}

/// Converts between the scalar kinds (real values embed into Complex).
template <class T, class S>
T lift(const S& s) {
  if constexpr (std::is_same_v<T, S>) {
    return s;
  } else if constexpr (is_complex_v<S>) {
    static_assert(is_complex_v<T>, "cannot drop an imaginary part implicitly");
    return T(lift<typename T::value_type>(s.re), lift<typename T::value_type>(s.im));
  } else if constexpr (is_complex_v<T>) {
    return T(lift<typename T::value_type>(s));
  } else if constexpr (std::is_same_v<T, Real>) {
    return to_real(s);
  } else if constexpr (std::is_same_v<T, double>) {
    return to_double(s);
  } else {
    return exact_rational(s);
  }
}

}  // namespace hypcurve
