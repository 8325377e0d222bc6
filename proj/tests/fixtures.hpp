#pragma once

// Shared test fixtures.

#include "hypcurve/form.hpp"

namespace fixtures {

inline const char* kCubic = "x^3 + 2*x^2*y - x*y^2 - 2*y^3 - x*z^2";
inline const char* kCubicInterlacer = "x^2 - y^2 - 1/5*z^2";

inline const char* kQuartic =
    "1250000*x^4 - 1749500*x^3*y - 2250800*x^2*y^2 - 4312500*x^2*z^2 + 69260*x*y^3 "
    "+ 786875*x*y*z^2 + 88176*y^4 + 1141000*y^2*z^2 + 1687500*z^4";
inline const char* kQuarticInterlacer =
    "500*x^3 - 800*x^2*y - 740*x*y^2 - 625*x*z^2 + 176*y^3 + 1000*y*z^2";

inline const char* kElliptic = "x^3 - 6*x*z^2 - 3*z^3 - y^2*z";
inline const char* kEllipticInterlacer = "y^2 + 3*x*z + z^2";

// The rational 4x4 pencil published for the elliptic curve, entries as linear forms.
inline const char* kEllipticPencil[4][4] = {
    {"3*z", "y", "-x - z", "-3*x + z"},
    {"y", "-x + 2*z", "0", "-y"},
    {"-x - z", "0", "z", "x + 4*z"},
    {"-3*x + z", "-y", "x + 4*z", "-x + 18*z"},
};

// The rational 4x4 pencil published for the cubic with interlacer x^2 - y^2 - z^2/5.
inline const char* kCubicPencil[4][4] = {
    {"5*x + 10*y", "-x - 2*y", "-4*z", "2*z"},
    {"-x - 2*y", "x", "0", "0"},
    {"-4*z", "0", "4*x + 2*y", "-2*x - 4*y"},
    {"2*z", "0", "-2*x - 4*y", "4*x + 2*y"},
};

inline hypcurve::Form<hypcurve::Rational> linear_entry(const char* text) {
  auto f = hypcurve::parse_form(text);
  return f.is_zero() ? hypcurve::Form<hypcurve::Rational>(1) : f;
}

inline hypcurve::FormMatrix<hypcurve::Rational> pencil_forms(const char* (*entries)[4]) {
  hypcurve::FormMatrix<hypcurve::Rational> m(4, std::vector<hypcurve::Form<hypcurve::Rational>>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = linear_entry(entries[i][j]);
  return m;
}

}  // namespace fixtures
