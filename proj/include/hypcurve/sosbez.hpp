#pragma once

// B(f,g) = S^T A S from a full-size pencil with kernel relation M m = f v. In a frame with
// e = (1,0,0), A is the x-coefficient matrix of M and column j of S holds the x^j coefficients of m.

#include "hypcurve/dixon.hpp"
#include "hypcurve/form.hpp"
#include "hypcurve/rationalize.hpp"

namespace hypcurve {

template <class S>
struct SosFactor {
  int degree = 0;
  Point3<S> e;
  FormMatrix<S> s;   // N x d, entry (mu, j) a form of degree d-1-j in the frame variables (y,z)
  Matrix<S> a;       // N x N, positive definite
  S lambda{0};       // v^T m = lambda g
  Real residual{0};  // max coefficient of B(f,g) - S^T A S, relative to B
};

/// Works in the frame of frame_for(e), the same coordinates as bezout_multi. Requires v^T m to be
/// a positive multiple of g; A is rescaled by that multiple. Throws InputError on shape mismatch and
/// InternalConsistencyError when the relation or the identity fails.
template <class S>
SosFactor<S> extract_sos(const Form<S>& f, const Form<S>& g, const Point3<S>& e,
                         const CertifiedPencil<S>& cp);

/// From a pipeline result with r = 0, for the interlacer the pipeline used (result.state.g, which
/// differs from the input after a perturbation).
SosFactor<Real> extract_sos(const Form<Rational>& f, const DixonResult& result);

/// S^T A S as a d x d matrix of forms.
template <class S>
FormMatrix<S> sos_product(const SosFactor<S>& sf);

/// Entrywise residual of bezout_multi(f,g,e) - S^T A S relative to the largest Bezout coefficient.
template <class S>
Real sos_residual(const Form<S>& f, const Form<S>& g, const SosFactor<S>& sf);

/// residual <= tol and A positive definite.
template <class S>
bool verify_sos(const Form<S>& f, const Form<S>& g, const SosFactor<S>& sf, const Real& tol);

}  // namespace hypcurve
