#pragma once

// The generalized Dixon process: from a hyperbolic form f, an interlacer g and a point e of the
// hyperbolicity region, a symmetric linear pencil M with det(M) = gamma * f * h, where h is a
// product of real lines, and M(e) positive definite.

#include <cstdint>
#include <optional>
#include <vector>

#include "hypcurve/curves.hpp"
#include "hypcurve/form.hpp"
#include "hypcurve/pencil.hpp"

namespace hypcurve {

template <class T>
using SymTable = std::vector<std::vector<T>>;

struct DixonState {
  Form<Real> f;  // oriented so f(e) > 0
  Form<Real> g;  // oriented so g(e) > 0, unit max coefficient
  Point3<Real> e;
  ContactData data;
  std::vector<Form<Real>> basis;  // a_1 = g, then an orthonormal completion
  Form<Real> h;                   // product of data.lines (the constant 1 when s = 0)
  Form<Real> l0;                  // auxiliary line of the s_ij correction
  SymTable<Form<Real>> b;         // Noether solutions
  SymTable<Form<Real>> c;         // adjusted entries; c[0][k] = h * a_k
  std::vector<std::vector<Point3<Real>>> touch;      // touch[k][i]: double root of c_kk on l_i
  std::vector<std::vector<ProjPoint>> r_points;      // r_points[i]: the other points of (l_i . f)
  std::vector<std::vector<Point3<Real>>> s_points;   // s_points[i][j] = l_i meet l_j
  FormMatrix<Real> n;

  std::size_t size() const { return basis.size(); }
  int d() const { return f.degree(); }
  int s() const { return data.s; }
};

struct DixonDiagnostics {
  Real noether_residual{0};      // max over (k,l), relative
  Real double_root_residual{0};  // c_kk and its derivative along l_i at t_ki
  Real lemma_residual{0};        // c_kl at t_li after forcing vanishing at t_ki
  Real minor_residual{0};        // 2x2 minors of N divided by f*h
  Real step6_min{0};             // min of c_22 * D_e(fh) on sampled points of V(fh), normalized
  Real fit_residual{0};          // linear fit of the scaled adjugate
  Real det_residual{0};          // det M - gamma f h at random points, relative
  Real min_eigenvalue{0};        // of M(e) after normalization
  Real g_minor_residual{0};      // M_{1,1} divided by g
  Real h_minor_residual{0};      // max over l of M_{1,l} divided by h
  std::optional<Rational> perturbation;  // epsilon when g was perturbed
  bool g_flipped = false;
  bool f_flipped = false;
};

struct DixonOptions {
  bool perturb = false;
  std::uint64_t seed = 0;
  int interlacer_samples = 64;
};

struct DixonResult {
  LinearPencil<Real> pencil;
  DixonState state;
  DixonDiagnostics diagnostics;
};

// ---- individual steps ----------------------------------------------------------------------

/// Forms of degree d-1 vanishing at the contacts to order mu along f, a_1 = g first. The
/// completion is orthonormal in coefficient space and rotated by a seeded random orthogonal map.
std::vector<Form<Real>> contact_basis(const Form<Real>& f, const Form<Real>& g,
                                      const ContactData& data, std::uint64_t seed = 0);

/// Minimum-norm solutions of b g - h a_k a_l = c f for a fixed (f, g, h).
class NoetherSolver {
 public:
  NoetherSolver(const Form<Real>& f, const Form<Real>& g, const Form<Real>& h);

  struct Solution {
    Form<Real> b;
    Form<Real> c;
    Real residual;
  };
  Solution solve(const Form<Real>& a_k, const Form<Real>& a_l) const;

 private:
  Form<Real> f_, g_, h_;
  int deg_b_;
  int deg_c_;
  LeastSquaresSolver<Real> solver_;
};

/// One-shot variant of NoetherSolver; throws GenericityFailure above the residual bound 1e-28.
Form<Real> noether_solve(const Form<Real>& f, const Form<Real>& g, const Form<Real>& h,
                         const Form<Real>& a_k, const Form<Real>& a_l);

/// Step 3 for index k: makes c_kk vanish at every s_ij and touch each l_i in a double point.
void adjust_diagonal(DixonState& st, std::size_t k, DixonDiagnostics& diag);

/// Step 4 for k < l: forces c_kl to vanish at t_ki and checks that it then vanishes at t_li.
void adjust_offdiagonal(DixonState& st, std::size_t k, std::size_t l, DixonDiagnostics& diag);

/// Step 5: fills st.n and checks that every 2x2 minor is divisible by f h.
void assemble(DixonState& st, DixonDiagnostics& diag);

/// Step 6: min of c_22 * D_e(fh) at sampled real points of V(fh), normalized.
Real step6_check(const DixonState& st, int samples, std::uint64_t seed);

/// Step 7: M = (fh)^(2-d-s) adj(N) by sampling and a linear fit; normalized to unit max entry
/// with M(e) positive definite.
LinearPencil<Real> extract_pencil(const DixonState& st, DixonDiagnostics& diag,
                                  std::uint64_t seed = 0);

/// Smoothness of V(f) over C, from intersection points of generic combinations of the partials.
bool is_smooth(const Form<Rational>& f, std::uint64_t seed = 0);

/// The full process with input checks; throws InputError for inadmissible input and
/// NumericalError subclasses on numerical failure.
DixonResult dixon_pipeline(const Form<Rational>& f, const Form<Rational>& g,
                           const Point3<Rational>& e, const DixonOptions& options = {});

/// m = (d^2 + d - 2r) / 2.
inline int dixon_size(int d, int r) { return (d * d + d - 2 * r) / 2; }

}  // namespace hypcurve
