#pragma once

// Intersection cycles of plane curves, contact classification, genericity, local branches.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hypcurve/form.hpp"
#include "hypcurve/scalar.hpp"

namespace hypcurve {

/// A point of P^2(C), canonically scaled so the coordinate of largest modulus is 1 (on near ties
/// the later coordinate wins).
struct ProjPoint {
  Point3<ComplexReal> coords;
  bool real = false;

  Point3<Real> real_part() const { return {coords[0].re, coords[1].re, coords[2].re}; }
  Point3<Real> imag_part() const { return {coords[0].im, coords[1].im, coords[2].im}; }
  ProjPoint conjugate() const;
  std::string str() const;
};

/// Canonical representative; throws if all coordinates vanish.
ProjPoint make_point(const Point3<ComplexReal>& coords);
ProjPoint make_point(const Point3<Real>& coords);

/// Max coordinate distance of the canonical representatives.
Real point_distance(const ProjPoint& a, const ProjPoint& b);

struct CyclePoint {
  ProjPoint point;
  int multiplicity = 1;
};

struct IntersectionCycle {
  std::vector<CyclePoint> points;
  int deg_f = 0;
  int deg_g = 0;
  std::uint64_t seed = 0;

  int total_multiplicity() const;
};

/// (f.g) over the rationals: resultant after a random rational shear, exact squarefree
/// decomposition, roots at the working precision. Retries up to five shears.
IntersectionCycle intersection_cycle(const Form<Rational>& f, const Form<Rational>& g,
                                     std::uint64_t seed = 0);

/// Float inputs: the dyadic coefficients are intersected exactly, then points closer than
/// cluster_tol are merged.
IntersectionCycle intersection_cycle(const Form<Real>& f, const Form<Real>& g,
                                     std::uint64_t seed = 0, const Real& cluster_tol = Real(1e-20));

/// Every point of b matched by a point of a with equal multiplicity within tol.
bool cycles_match(const IntersectionCycle& a, const IntersectionCycle& b, const Real& tol);

struct Contact {
  ProjPoint point;
  int half_multiplicity = 1;
};

struct ConjugatePair {
  ProjPoint q;
  ProjPoint q_bar;
};

struct ContactData {
  std::vector<Contact> contacts;
  std::vector<ConjugatePair> pairs;
  std::vector<Form<Real>> lines;  // lines[i] joins pairs[i]; normalized with lines[i](e) > 0
  int r = 0;
  int s = 0;
};

/// Splits a conjugation-closed cycle into real contacts and conjugate pairs.
ContactData classify_cycle(const IntersectionCycle& cycle, const Point3<Real>& e);

struct GenericityReport {
  bool g1 = true;
  bool g2 = true;
  bool g3 = true;
  std::vector<std::array<std::size_t, 3>> collinear_points;  // indices into all_points
  std::vector<std::array<std::size_t, 3>> concurrent_lines;  // indices into lines
  std::vector<std::array<std::size_t, 2>> f_on_line_meets;   // pairs (i, j) with f(s_ij) = 0
  std::vector<ProjPoint> all_points;                          // contacts, then q_i, q_bar_i
  /// G1 violations among triples that contain a non-real point.
  bool g1_nonreal_violation = false;

  bool ok() const { return g1 && g2 && g3; }
};

GenericityReport genericity_check(const Form<Real>& f, const ContactData& data);

/// Intersection point of two lines given as linear forms.
Point3<Real> line_meet(const Form<Real>& a, const Form<Real>& b);

/// Whether the Jacobian of (f, g) vanishes at p (tangency of the curves there).
bool jacobian_vanishes(const Form<Real>& f, const Form<Real>& g, const ProjPoint& p,
                       const Real& tol = Real(1e-20));

/// Local parametrization of V(f) at a smooth real point: in the affine chart coords[chart] = 1 the
/// dependent coordinate is w(t) = center_dep + sum_k coeffs[k-1] t^k with the parameter coordinate
/// equal to center_param + t.
struct BranchExpansion {
  int chart = 2;
  int param_var = 0;
  int dep_var = 1;
  Real center_param;
  Real center_dep;
  std::vector<Real> coeffs;

  /// The point of the branch at parameter t, as a point of R^3 with coords[chart] = 1.
  Point3<Real> at(const Real& t) const;
};

BranchExpansion branch_expansion(const Form<Real>& f, const Point3<Real>& p, int order);

/// Coefficients t^0 .. t^{order-1} of a(branch(t)) for a form a, linear in the coefficients of a:
/// row m gives the t^m coefficient as a functional on the coefficient vector of degree deg.
std::vector<std::vector<Real>> branch_vanishing_conditions(const BranchExpansion& branch, int deg,
                                                           int order);

}  // namespace hypcurve
