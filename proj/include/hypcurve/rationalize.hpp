#pragma once

// Rational pencils for rational f: the conditions (xA + yB + zC) m = f v, with m the monomials of
// degree d - 1, are linear over Q in (A, B, C, v). A float solution is rounded in the coordinates
// of the exact solution space, so the identity survives rounding.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcurve/dixon.hpp"
#include "hypcurve/form.hpp"
#include "hypcurve/pencil.hpp"

namespace hypcurve {

/// A pencil with a kernel certificate: (xA + yB + zC) m = f v for forms m_j of degree d - 1 and
/// constants v_j. Rationalization works with m the monomials of degree d - 1 (size d(d+1)/2).
template <class S>
struct CertifiedPencil {
  int degree = 0;  // d = deg f
  LinearPencil<S> pencil;
  std::vector<Form<S>> m;
  std::vector<S> v;
};

using RationalPencil = CertifiedPencil<Rational>;

/// The monomials of the given degree in storage order, as forms.
template <class S>
std::vector<Form<S>> monomial_vector(int degree) {
  std::vector<Form<S>> m;
  for (const auto& ex : exponents(degree)) m.push_back(Form<S>::monomial(ex.i, ex.j, ex.k));
  return m;
}

/// Some exact certificate (m, v) for a rational pencil, from the nullspace of the identity's
/// linear conditions; nullopt when only m = 0 solves it.
std::optional<RationalPencil> kernel_certificate(const Form<Rational>& f, const LinearPencil<Rational>& p);

/// The pipeline pencil with m = the constructed basis and v = delta from M a = f delta. Throws
/// when the relation fails (residual above 1e-10).
CertifiedPencil<Real> kernel_relation(const DixonResult& result);

/// Rewrites a full-size Dixon pencil (r = 0) in the monomial basis: with a = K m and M a = f delta,
/// the pencil K^T M K satisfies the identity with v = K^T delta. Throws when r > 0 or the relation
/// M a = f delta fails (residual above 1e-10).
CertifiedPencil<Real> monomial_form(const DixonResult& result);

/// The linear system of the identity, unknowns ordered as A_ij, B_ij, C_ij (i <= j, row major)
/// then v.
Matrix<Rational> identity_conditions(const Form<Rational>& f);

struct RationalizeReport {
  bool success = false;
  std::optional<RationalPencil> result;
  RationalPencil nearest;      // the last rounding tried
  Rational max_den_used{0};
  int attempts = 0;
  std::size_t parameters = 0;  // dimension of the exact solution space
  double distance = 0;         // max |rounded - float| over all unknowns
  std::string message;
};

/// Rounds the free parameters with denominators <= max_den, doubling the bound up to `doublings`
/// times while e-definiteness or the cofactor check fails.
RationalizeReport rationalize_pencil(const Form<Rational>& f, const Point3<Rational>& e,
                                     const CertifiedPencil<Real>& solution, const Rational& max_den,
                                     int doublings = 3, std::uint64_t seed = 0);

/// Exact checks: the identity with the stored m, M(e) positive definite, f | det M, and a sampled sign check of
/// det(M)/f on C(f,e).
bool verify_rational(const Form<Rational>& f, const Point3<Rational>& e, const RationalPencil& rp,
                     int samples = 40, std::uint64_t seed = 0);

}  // namespace hypcurve
