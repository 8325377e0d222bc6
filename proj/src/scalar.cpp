#include "hypcurve/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "hypcurve/error.hpp"

namespace hypcurve {

namespace {

unsigned digits10_for_bits(unsigned bits) {
  // mpfr_float_backend stores digits10 and converts back to bits internally.
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 1;
}

}  // namespace

unsigned default_precision_bits() {
  static const unsigned bits = [] {
    if (const char* env = std::getenv("HYPCURVE_PRECISION")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 64 && v <= (1L << 20)) return static_cast<unsigned>(v);
    }
    return kDefaultPrecisionBits;
  }();
  return bits;
}

unsigned current_precision_bits() {
  Real probe(0);
  return precision_bits(probe);
}

unsigned precision_bits(const Real& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

namespace {
// Newly constructed Real values start at the default working precision.
const bool kPrecisionInitialized = [] {
  Real::default_precision(digits10_for_bits(default_precision_bits()));
  return true;
}();
}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real to_real(const Rational& q) { return Real(q.get_mpq_t()); }

Rational exact_rational(const Real& x) {
  if (x.is_zero()) return Rational(0);
  mpz_class mant;
  mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), x.backend().data());
  Rational r(mant);
  if (exp > 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else if (exp < 0) {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  return r;
}

Rational exact_rational(double x) { return Rational(x); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num / den);
  }
  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  mpz_class digits = 0;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ParseError("malformed number '" + text + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw ParseError("malformed number '" + text + "'");
    std::string rest = s.substr(pos + 1);
    char* end = nullptr;
    long e = std::strtol(rest.c_str(), &end, 10);
    if (rest.empty() || *end != '\0') throw ParseError("malformed exponent in '" + text + "'");
    scale += e;
  }
  Rational r(digits);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale > 0) r *= p10;
  if (scale < 0) r /= p10;
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string to_string(const Real& x) {
  // digits10 + 2 guarantees a round trip at the value's own precision.
  unsigned digits = static_cast<unsigned>(precision_bits(x) * 0.30102999566398119521) + 2;
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Rational best_rational_approximation(const Real& x, const Rational& max_den) {
  // Convergents h/k of the continued fraction; the last one with k <= max_den wins.
  Rational rem = exact_rational(x);
  mpz_class h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
  Rational best(0);
  for (int iter = 0; iter < 4096; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    if (iter > 0 && Rational(k) > max_den) break;
    best = Rational(h, k);
    best.canonicalize();
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Rational frac = rem - Rational(a);
    if (sgn(frac) == 0) break;
    rem = 1 / frac;
  }
  return best;
}

}  // namespace hypcurve
