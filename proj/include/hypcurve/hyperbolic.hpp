#pragma once

// Hyperbolicity and cone membership, multivariate Bezout matrices, Wronskians, interlacers,
// low-rank Gram matrices, and the real-contact conic search for quartics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcurve/form.hpp"
#include "hypcurve/matrix.hpp"
#include "hypcurve/scalar.hpp"

namespace hypcurve {

/// A frame T with T * (1,0,0) = e. The other two columns are the unit vectors that skip the
/// coordinate of largest modulus in e, so T is rational whenever e is.
template <class S>
Matrix<S> frame_for(const Point3<S>& e);

/// W(f,g) = D_e f * g - f * D_e g.
template <class S>
Form<S> wronskian(const Form<S>& f, const Form<S>& g, const Point3<S>& e);

/// Bezout matrix of f and g with respect to e, in the coordinates of frame_for(e). Entry (i,j)
/// (0-based) is a form of degree 2d-2-i-j not involving the first frame variable.
template <class S>
FormMatrix<S> bezout_multi(const Form<S>& f, const Form<S>& g, const Point3<S>& e);

/// The univariate Bezout matrix of t -> f(te+v) and t -> g(te+v). For v = T*(0,y,z) this is
/// bezout_multi evaluated at (y,z).
template <class S>
Matrix<S> bezout_at(const Form<S>& f, const Form<S>& g, const Point3<S>& e, const Point3<S>& v);

template <class S>
struct HyperbolicityReport {
  bool hyperbolic = true;
  bool roots_ok = true;   // every sampled restriction is real-rooted
  bool bezout_ok = true;  // B(f, D_e f) is PSD at every sample
  int samples = 0;
  std::optional<Point3<S>> witness;
};

/// Sampled hyperbolicity test on `samples` lines through e (Sturm sequences for rational input).
/// Throws InputError when f(e) = 0.
template <class S>
HyperbolicityReport<S> is_hyperbolic(const Form<S>& f, const Point3<S>& e, int samples,
                                     std::uint64_t seed);

/// a lies in the closed cone C(f,e): every real root of t -> f(a + te) is <= tol. Assumes f is
/// hyperbolic with respect to e. The float variants count sign changes (Descartes' rule is exact
/// for real-rooted polynomials).
bool cone_contains(const Form<Rational>& f, const Point3<Rational>& e, const Point3<Rational>& a,
                   const Rational& tol = Rational(0));
bool cone_contains(const Form<Real>& f, const Point3<Real>& e, const Point3<Real>& a,
                   const Real& tol = Real(0));
bool cone_contains(const Form<double>& f, const Point3<double>& e, const Point3<double>& a,
                   double tol = 0.0);

struct InterlacerReport {
  bool is_interlacer = false;
  bool strict = false;
  bool g_positive_at_e = false;
  Real wronskian_min;  // min of W(f,g) on sampled points of V(f), normalized
  int samples = 0;
  std::vector<Point3<Real>> line_failures;
  std::vector<Point3<Real>> bezout_psd_failures;
  std::vector<Point3<Real>> wronskian_failures;
};

/// Combines per-line interlacing, Bezout PSD sampling and the sign of the Wronskian on V(f).
template <class S>
InterlacerReport is_interlacer(const Form<S>& f, const Form<S>& g, const Point3<S>& e, int samples,
                               std::uint64_t seed);

/// ceil(((d+1)d - 2) / 4), the fewest real contact points of an extremal interlacer.
int extremal_contact_bound(int d);

/// A rational point of the hyperbolicity region with f > 0 there, found by sampling lines;
/// nullopt when nothing was found.
std::optional<Point3<Rational>> find_interior_point(const Form<Rational>& f, std::uint64_t seed,
                                                    int attempts = 400);

// ---- Gram matrices -------------------------------------------------------------------------

struct GramResult {
  Matrix<double> gram;              // L L^T in the monomial order of exponents(k)
  std::vector<double> eigenvalues;  // descending, divided by the largest
  double residual = 0;              // max coefficient error relative to max |w|
  bool converged = false;
};

/// Searches for a PSD Gram matrix of rank <= rank for the form w of degree 2k by Levenberg-Marquardt
/// on a factor L with `rank` columns.
GramResult low_rank_gram(const Form<double>& w, int rank, std::uint64_t seed, int starts = 20);

// ---- conic search for quartics --------------------------------------------------------------

struct ConicContact {
  Point3<double> point;  // original coordinates
  double residual = 0;   // tangency residual of f along the conic's tangent line
  bool inner = false;
};

struct ConicScanEntry {
  double theta = 0;
  double lambda1 = 0;
  double lambda2 = 0;
};

struct ConicSearchResult {
  bool success = false;
  std::string message;
  Form<double> conic;  // degree 2, original coordinates, unit max coefficient
  double theta = 0;
  double lambda = 0;
  std::vector<ConicContact> contacts;
  std::vector<ConicScanEntry> trace;
};

/// The conic pencil q_lambda = g^2 - lambda l1 l2 search for a conic touching both ovals of a
/// hyperbolic quartic in real points. `grid` is the number of directions scanned over [0, pi).
ConicSearchResult real_contact_conic_search(const Form<Rational>& f, const Point3<Rational>& e,
                                            int grid, std::uint64_t seed);

}  // namespace hypcurve
