#include "hypcurve/form.hpp"

#include <cctype>
#include <map>
#include <tuple>

#include "hypcurve/error.hpp"

namespace hypcurve {

namespace {

// Sparse polynomial used only while parsing (not necessarily homogeneous).
using Key = std::tuple<int, int, int>;
using Sparse = std::map<Key, Rational>;

Sparse sparse_constant(const Rational& c) {
  Sparse s;
  if (sgn(c) != 0) s[{0, 0, 0}] = c;
  return s;
}

void add_into(Sparse& acc, const Sparse& b, int sign) {
  for (const auto& [k, v] : b) {
    Rational& slot = acc[k];
    if (sign > 0)
      slot += v;
    else
      slot -= v;
    if (sgn(slot) == 0) acc.erase(k);
  }
}

Sparse multiply(const Sparse& a, const Sparse& b) {
  Sparse out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      Key k{std::get<0>(ka) + std::get<0>(kb), std::get<1>(ka) + std::get<1>(kb),
            std::get<2>(ka) + std::get<2>(kb)};
      Rational& slot = out[k];
      slot += va * vb;
      if (sgn(slot) == 0) out.erase(k);
    }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Sparse parse() {
    Sparse out = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("cannot parse form at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'x' ||
           c == 'y' || c == 'z';
  }

  Sparse expr() {
    Sparse acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        add_into(acc, term(), +1);
      } else if (peek('-')) {
        ++pos_;
        add_into(acc, term(), -1);
      } else {
        return acc;
      }
    }
  }

  Sparse term() {
    Sparse acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = multiply(acc, unary());
      } else if (peek('/')) {
        ++pos_;
        Sparse d = unary();
        if (d.size() != 1 || d.begin()->first != Key{0, 0, 0})
          fail("division is only allowed by nonzero constants");
        Rational inv = 1 / d.begin()->second;
        for (auto& [k, v] : acc) v *= inv;
      } else if (starts_factor()) {
        acc = multiply(acc, power());
      } else {
        return acc;
      }
    }
  }

  Sparse unary() {
    if (peek('-')) {
      ++pos_;
      Sparse v = unary();
      for (auto& [k, c] : v) c = -c;
      return v;
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Sparse power() {
    Sparse base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      int n = std::stoi(s_.substr(start, pos_ - start));
      Sparse r = sparse_constant(Rational(1));
      for (int i = 0; i < n; ++i) r = multiply(r, base);
      return r;
    }
    return base;
  }

  Sparse primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Sparse v = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return v;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      Key k{c == 'x', c == 'y', c == 'z'};
      return Sparse{{k, Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      // Optional exponent, e.g. 1.5e-3.
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      try {
        return sparse_constant(parse_rational(s_.substr(start, pos_ - start)));
      } catch (const std::exception&) {
        fail("malformed number");
      }
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Form<Rational> parse_form(const std::string& text) {
  Sparse sp = Parser(text).parse();
  if (sp.empty()) return Form<Rational>(0);
  int degree = -1;
  for (const auto& [k, v] : sp) {
    int d = std::get<0>(k) + std::get<1>(k) + std::get<2>(k);
    if (degree < 0) degree = d;
    if (d != degree) throw ParseError("expression is not homogeneous: \"" + text + "\"");
  }
  Form<Rational> f(degree);
  for (const auto& [k, v] : sp) f.coeff(std::get<0>(k), std::get<1>(k), std::get<2>(k)) = v;
  return f;
}

}  // namespace hypcurve
