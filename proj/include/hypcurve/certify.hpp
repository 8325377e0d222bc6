#pragma once

// Independent verification of a claimed pencil M = xA + yB + zC for (f, e): determinant identity,
// definiteness at e, minor divisibility, sampled agreement of S(M) with C(f,e), corank table.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcurve/curves.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/form.hpp"
#include "hypcurve/pencil.hpp"

namespace hypcurve {

struct CorankEntry {
  std::string label;  // "r_ij", "s_ij" or "q_j" with indices
  ProjPoint point;
  int expected = 0;
  int observed = 0;
  std::vector<double> singular_values;  // ascending, relative to the largest
};

struct RegionAgreement {
  int samples = 0;
  int disagreements = 0;
  int boundary_excluded = 0;
  int sign_violations = 0;  // a and -a both inside
  std::vector<Point3<double>> witnesses;  // first few disagreements
};

struct Certificate {
  bool exact = false;
  int size = 0;
  std::string gamma;            // decimal or p/q
  std::string h;                // det(M) / (gamma f), unit max coefficient, h(e) > 0
  int h_degree = 0;
  Real det_residual{0};         // division of det(M) by f, then sampled identity
  Real min_eigenvalue{0};       // of M(e)
  bool definite = false;
  std::optional<Real> g_minor_residual;
  Real h_minor_residual{0};     // max over l of M_{1,l} / h (zero when not checked)
  bool h_minors_checked = false;
  RegionAgreement region;
  std::vector<CorankEntry> corank;
  bool pass = false;
  std::vector<std::string> reasons;  // failed checks
};

struct CertifyOptions {
  int samples = 2000;
  std::uint64_t seed = 0;
  double boundary_band = 1e-6;
  double psd_tol = 1e-10;
  double corank_tol = 1e-8;
};

/// Exact mode: identities over Q, definiteness by exact pivoting; region sampling in double.
Certificate certify_pencil(const Form<Rational>& f, const Point3<Rational>& e,
                           const LinearPencil<Rational>& pencil,
                           const std::optional<Form<Rational>>& g = std::nullopt,
                           const CertifyOptions& options = {});

/// Float mode. A DixonState adds the corank table at the points r_ij, s_ij and q_j.
Certificate certify_pencil(const Form<Real>& f, const Point3<Real>& e, const LinearPencil<Real>& pencil,
                           const std::optional<Form<Real>>& g = std::nullopt,
                           const DixonState* state = nullptr, const CertifyOptions& options = {});

}  // namespace hypcurve
