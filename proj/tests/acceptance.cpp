// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hypcurve/certify.hpp"
#include "hypcurve/curves.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/linalg.hpp"
#include "hypcurve/random.hpp"
#include "hypcurve/rationalize.hpp"
#include "hypcurve/sosbez.hpp"
#include "hypcurve/univariate.hpp"

using namespace hypcurve;

namespace {

// Pinned tolerances.
constexpr double kQuadricDetTol = 1e-12;
constexpr double kQuadricSeconds = 1.0;
constexpr double kLineTol = 1e-8;
constexpr int kCubicCertSamples = 10000;
constexpr double kPointTol = 1e-6;
constexpr double kRootWidth = 1e-12;
constexpr double kGramTailTol = 1e-9;
constexpr double kSosTol = 1e-9;
constexpr int kRegionSamples = 10000;
constexpr double kSuiteSeconds = 300.0;
constexpr double kIdentityTol = 1e-10;

const Point3<Rational> kE{1, 0, 0};

Form<Rational> F(const std::string& s) { return parse_form(s); }
Form<Real> R(const std::string& s) { return parse_form(s).convert<Real>(); }
Point3<Real> real3(const Point3<Rational>& p) { return {to_real(p[0]), to_real(p[1]), to_real(p[2])}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}
std::string num(const Real& v) { return num(to_double(v)); }

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Runs a criterion body; exceptions count as failure with their message.
void criterion(int id, const char* name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& ex) {
    detail += (detail.empty() ? "" : "; ") + std::string("exception: ") + ex.what();
  }
  report(id, name, pass, detail);
}

// Distance of two linear forms from proportionality, both scaled to unit max coordinate.
Real line_distance(const Form<Real>& a, const Form<Real>& b) {
  Point3<Real> pa{a.coeff(1, 0, 0), a.coeff(0, 1, 0), a.coeff(0, 0, 1)};
  Point3<Real> pb{b.coeff(1, 0, 0), b.coeff(0, 1, 0), b.coeff(0, 0, 1)};
  auto mx = [](const Point3<Real>& p) {
    Real m(0);
    for (const auto& v : p) m = std::max(m, Real(abs(v)));
    return m;
  };
  return mx(cross(pa, pb)) / (mx(pa) * mx(pb));
}

Form<Real> minor11(const FormMatrix<Real>& m) {
  FormMatrix<Real> sub;
  for (std::size_t i = 1; i < m.size(); ++i) sub.emplace_back(m[i].begin() + 1, m[i].end());
  return determinant(sub);
}

// (positive, negative) eigenvalue counts, zero band relative to the largest modulus.
std::pair<int, int> inertia(const Matrix<Real>& m) {
  auto ev = symmetric_eigenvalues(m);
  Real top(0);
  for (const auto& v : ev) top = std::max(top, Real(abs(v)));
  int pos = 0, neg = 0;
  for (const auto& v : ev) {
    if (v > top * Real("1e-30")) ++pos;
    if (v < -top * Real("1e-30")) ++neg;
  }
  return {pos, neg};
}

// Region agreement on at least n samples outside the boundary band.
RegionAgreement region_check(const Form<Real>& f, const Point3<Real>& e, const LinearPencil<Real>& p, int n) {
  CertifyOptions opt;
  opt.samples = n;
  Certificate c = certify_pencil(f, e, p, std::nullopt, nullptr, opt);
  if (c.region.boundary_excluded > 0) {
    opt.samples = n + c.region.boundary_excluded * 2;
    c = certify_pencil(f, e, p, std::nullopt, nullptr, opt);
  }
  return c.region;
}

// The displayed Wronskian of the cubic against x^2 + g110 xy + g101 xz + g020 y^2 + g011 yz + g002 z^2.
Form<Rational> displayed_wronskian(const std::array<Rational, 5>& g) {
  const Rational &g110 = g[0], &g101 = g[1], &g020 = g[2], &g011 = g[3], &g002 = g[4];
  Form<Rational> w = F("x^4 + x^2*y^2 + x^2*z^2 + 4*x*y^3");
  auto add = [&](const Rational& c, const char* mono) { w += c * F(mono); };
  add(2 * g110, "x^3*y");
  add(2 * g110, "x^2*y^2");
  add(2 * g110, "y^4");
  add(2 * g101, "x^3*z");
  add(2 * g101, "x^2*y*z");
  add(2 * g101, "y^3*z");
  add(3 * g020, "x^2*y^2");
  add(4 * g020, "x*y^3");
  add(-g020, "y^4");
  add(-g020, "y^2*z^2");
  add(3 * g011, "x^2*y*z");
  add(4 * g011, "x*y^2*z");
  add(-g011, "y^3*z");
  add(-g011, "y*z^3");
  add(3 * g002, "x^2*z^2");
  add(4 * g002, "x*y*z^2");
  add(-g002, "y^2*z^2");
  add(-g002, "z^4");
  return w;
}

Poly<Rational> from_roots(const std::vector<Rational>& roots, const Rational& lead) {
  Poly<Rational> p = Poly<Rational>::constant(lead);
  for (const auto& r : roots) p *= Poly<Rational>::linear(1, -r);
  return p;
}

bool sorted_roots_interlace(std::vector<Rational> a, std::vector<Rational> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!(a[i] <= b[i] && b[i] <= a[i + 1])) return false;
  return true;
}

Form<Rational> random_form(Rng& rng, int d, long bound) {
  Form<Rational> f(d);
  for (auto& c : f.coeffs()) c = rng.rational(bound, 1);
  return f;
}

// w^T B w with w = (1, x, ..., x^{d-1}).
Form<Rational> contract(const FormMatrix<Rational>& b) {
  Form<Rational> acc(2 * static_cast<int>(b.size()) - 2);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[i][j].is_zero()) acc += Form<Rational>::monomial(static_cast<int>(i + j), 0, 0) * b[i][j];
  return acc;
}

struct Produced {
  std::string name;
  Form<Real> f;
  Point3<Real> e;
  LinearPencil<Real> pencil;
};

std::vector<Produced> produced;

void keep(const std::string& name, const Form<Rational>& f, const Point3<Rational>& e, const LinearPencil<Real>& p) {
  produced.push_back({name, f.convert<Real>(), real3(e), p});
}

}  // namespace

int main() {
  const auto all_start = std::chrono::steady_clock::now();

  criterion(1, "quadric end-to-end", [](std::string& out) {
    const Form<Rational> f = F("x^2 - y^2 - z^2");
    const auto t0 = std::chrono::steady_clock::now();
    auto res = dixon_pipeline(f, F("x"), kE);
    const double secs = seconds_since(t0);
    keep("quadric", f, kE, res.pencil);
    const auto& p = res.pencil;
    auto q = divide(determinant(p.forms()), R("x^3 - x*y^2 - x*z^2"));
    const Real gamma = q.quotient.degree() == 0 ? q.quotient.coeff(0, 0, 0) : Real(0);
    const Real lam = min_eigenvalue(p.at(real3(kE)));
    const Real m11 = divide(minor11(p.forms()), R("x")).residual;
    // Congruence invariants against the hand pencil: det ratio and inertia at random points.
    LinearPencil<Real> hand = pencil_from_forms(FormMatrix<Real>{
        {R("x"), R("-y"), R("-z")}, {R("-y"), R("x"), Form<Real>(1)}, {R("-z"), Form<Real>(1), R("x")}});
    Rng rng(1);
    int inertia_mismatch = 0;
    for (int i = 0; i < 200; ++i) {
      auto v = rng.sphere();
      Point3<Real> a{Real(v[0]), Real(v[1]), Real(v[2])};
      if (inertia(p.at(a)) != inertia(hand.at(a))) ++inertia_mismatch;
    }
    const bool pass = p.size == 3 && q.residual <= Real(kQuadricDetTol) && gamma > 0 && lam > 0 &&
                      m11 <= Real(kQuadricDetTol) && inertia_mismatch == 0 && secs < kQuadricSeconds;
    out = "size " + std::to_string(p.size) + ", det residual " + num(q.residual) + ", gamma " + num(gamma) +
          ", lambda_min M(e) " + num(lam) + ", M11/x residual " + num(m11) + ", inertia mismatches " +
          std::to_string(inertia_mismatch) + "/200, " + num(secs) + " s";
    return pass;
  });

  criterion(2, "cubic fixture", [](std::string& out) {
    const Form<Rational> f = F(fixtures::kCubic);
    const Form<Rational> fl = f * F("2*x - y");
    const Form<Rational> det = determinant(fixtures::pencil_forms(fixtures::kCubicPencil));
    const bool exact_ok = det == Rational(24, 125) * fl;
    auto quo = divide(det, fl);
    std::string ratio = quo.residual == 0 && quo.quotient.degree() == 0 ? to_string(quo.quotient.coeff(0, 0, 0)) : "n/a";

    auto res = dixon_pipeline(f, F(fixtures::kCubicInterlacer), kE);
    keep("cubic", f, kE, res.pencil);
    auto q = divide(determinant(res.pencil.forms()), f.convert<Real>());
    const Real dist = line_distance(q.quotient, R("2*x - y"));
    CertifyOptions opt;
    opt.samples = kCubicCertSamples;
    Certificate cert = certify_pencil(f.convert<Real>(), real3(kE), res.pencil,
                                      F(fixtures::kCubicInterlacer).convert<Real>(), &res.state, opt);
    out = std::string("det(published) == 24/125 f (2x-y): ") + (exact_ok ? "yes" : "no") +
          " (observed constant " + ratio + "); pipeline size " + std::to_string(res.pencil.size) +
          ", extra factor vs 2x-y " + num(dist) + ", certificate at " + std::to_string(opt.samples) +
          " samples " + (cert.pass ? "passes" : "fails");
    return exact_ok && res.pencil.size == 4 && dist <= Real(kLineTol) && cert.pass;
  });

  criterion(3, "elliptic fixture", [](std::string& out) {
    const Form<Rational> f = F(fixtures::kElliptic);
    auto e = find_interior_point(f, 0);
    if (!e) {
      out = "no interior point found";
      return false;
    }
    auto p = pencil_from_forms(fixtures::pencil_forms(fixtures::kEllipticPencil));
    Certificate cert = certify_pencil(f, *e, p);
    keep("elliptic published", f, *e, p.convert<Real>());
    const bool cert_ok = cert.pass && cert.det_residual == 0 && cert.h_degree == 1 && cert.definite;

    const Point3<Rational> e2{-1, 0, 1};
    DixonOptions opt;
    opt.perturb = true;
    auto res = dixon_pipeline(f, f.dir_derivative(e2), e2, opt);
    keep("elliptic D_e f", f, e2, res.pencil);
    auto rep = rationalize_pencil(f, e2, monomial_form(res), Rational(1000));
    const bool rat_ok = rep.success && verify_rational(f, e2, *rep.result);
    if (rat_ok) keep("elliptic rationalized", f, e2, rep.result->pencil.convert<Real>());
    out = "e = (" + to_string((*e)[0]) + ", " + to_string((*e)[1]) + ", " + to_string((*e)[2]) +
          "), exact certificate " + (cert_ok ? "passes" : "fails") + " (gamma " + cert.gamma + ", h " + cert.h +
          "); rationalized size " + std::to_string(rep.nearest.pencil.size) + " with denominators <= " +
          rep.max_den_used.get_str() + ", verify_rational " + (rat_ok ? "true" : "false");
    return cert_ok && rat_ok;
  });

  criterion(4, "quartic divisor", [](std::string& out) {
    const Form<Rational> f = F(fixtures::kQuartic);
    const Form<Rational> g = F(fixtures::kQuarticInterlacer);
    auto cyc = intersection_cycle(f, g);
    struct Expected {
      Point3<Real> p;
      int mult;
    };
    const std::vector<Expected> want = {{{4, -5, 0}, 4}, {{11, 5, 0}, 2}, {{1, 5, 0}, 2}, {{7, 10, -10}, 2}, {{7, 10, 10}, 2}};
    int matched = 0;
    Real worst(0);
    for (const auto& w : want) {
      const ProjPoint target = make_point(w.p);
      Real best(1e9);
      int mult = 0;
      for (const auto& cp : cyc.points) {
        Real dd = point_distance(cp.point, target);
        if (dd < best) {
          best = dd;
          mult = cp.multiplicity;
        }
      }
      worst = std::max(worst, best);
      if (best <= Real(kPointTol) && mult == w.mult) ++matched;
    }
    auto data = classify_cycle(cyc, real3(kE));
    auto res = dixon_pipeline(f, g, kE);
    keep("quartic", f, kE, res.pencil);
    auto q = divide(determinant(res.pencil.forms()), f.convert<Real>());
    Certificate cert = certify_pencil(f.convert<Real>(), real3(kE), res.pencil, g.convert<Real>(), &res.state);
    out = std::to_string(matched) + "/5 points matched (worst distance " + num(worst) + "), " +
          std::to_string(cyc.points.size()) + " points total; r = " + std::to_string(data.r) + ", s = " +
          std::to_string(data.s) + "; pencil size " + std::to_string(res.pencil.size) + ", det/f degree " +
          std::to_string(q.quotient.degree()) + " residual " + num(q.residual) + ", certificate " +
          (cert.pass ? "passes" : "fails");
    return matched == 5 && cyc.points.size() == 5 && data.r == 6 && data.s == 0 && res.pencil.size == 4 &&
           q.quotient.degree() == 0 && q.residual <= Real(kIdentityTol) && cert.pass;
  });

  criterion(5, "extremal contact bound table", [](std::string& out) {
    const int want[] = {1, 3, 5, 7, 10};
    bool ok = true;
    for (int d = 2; d <= 6; ++d) {
      const int got = extremal_contact_bound(d);
      out += (d > 2 ? ", " : "") + std::string("d=") + std::to_string(d) + ": " + std::to_string(got);
      ok = ok && got == want[d - 2];
    }
    return ok;
  });

  criterion(6, "Wronskian and Gram fixture", [](std::string& out) {
    const Form<Rational> f = F(fixtures::kCubic);
    Rng rng(6);
    int symbolic_ok = 0;
    for (int i = 0; i < 5; ++i) {
      std::array<Rational, 5> gp;
      for (auto& c : gp) c = rng.rational(40, 7);
      Form<Rational> g = F("x^2") + gp[0] * F("x*y") + gp[1] * F("x*z") + gp[2] * F("y^2") + gp[3] * F("y*z") +
                         gp[4] * F("z^2");
      if (wronskian(f, g, kE) == displayed_wronskian(gp)) ++symbolic_ok;
    }
    const Poly<Rational> qt = F("49*x^4 - 20*x^3*y + 22*x^2*y^2 + 12*x*y^3 + y^4")
                                  .restrict_to_line(Point3<Rational>{1, 0, 0}, Point3<Rational>{0, 1, 0});
    const int nreal = real_root_count(qt);
    auto roots = isolate_real_roots(qt);
    int rank2 = 0;
    std::string tails;
    for (auto root : roots) {
      refine_root(root, squarefree_part(qt), exact_rational(kRootWidth));
      const Rational t = root.midpoint();
      const Form<Rational> g = F("x^2 - y^2") + t * F("z^2");
      auto gram = low_rank_gram(wronskian(f, g, kE).convert<double>(), 2, 1);
      tails += (tails.empty() ? "" : ", ") + num(gram.eigenvalues.size() > 2 ? gram.eigenvalues[2] : 1.0);
      if (gram.converged && gram.eigenvalues.size() > 2 && std::fabs(gram.eigenvalues[2]) <= kGramTailTol &&
          gram.eigenvalues[1] > kGramTailTol)
        ++rank2;
    }
    out = std::to_string(symbolic_ok) + "/5 symbolic matches; q has " + std::to_string(nreal) +
          " real roots; rank-2 Gram at " + std::to_string(rank2) + " roots (third eigenvalues " + tails + ")";
    return symbolic_ok == 5 && nreal == 2 && roots.size() == 2 && rank2 == 2;
  });

  criterion(7, "property suites", [](std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    // (a) Bezout PSD iff interlacing, against sorted planted roots.
    Rng rng(7);
    int agree = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const int d = static_cast<int>(rng.uniform_int(2, 6));
      std::vector<Rational> a, b;
      for (int i = 0; i < d; ++i) a.push_back(rng.rational(12, 2));
      std::sort(a.begin(), a.end());
      const bool plant = rng.uniform_int(0, 1) == 1;
      for (int i = 0; i + 1 < d; ++i) {
        if (plant)
          b.push_back(a[i] + Rational(rng.uniform_int(0, 4), 4) * (a[i + 1] - a[i]));
        else
          b.push_back(rng.rational(12, 2));
      }
      auto p = from_roots(a, Rational(rng.uniform_int(1, 3)));
      auto q = from_roots(b, Rational(rng.uniform_int(1, 3)));
      if (is_positive_semidefinite(bezout_uni(p, q)) == sorted_roots_interlace(a, b)) ++agree;
    }
    // (b) w^T B w = W exactly.
    int wron = 0, wron_total = 0;
    while (wron_total < 100) {
      const int d = static_cast<int>(rng.uniform_int(1, 4));
      Form<Rational> f = random_form(rng, d, 9);
      Form<Rational> g = d > 1 ? random_form(rng, d - 1, 9) : Form<Rational>::constant(rng.rational(9, 1) + 10);
      Point3<Rational> e{rng.rational(5, 2), rng.rational(5, 3), rng.rational(5, 1)};
      if ((is_zero(e[0]) && is_zero(e[1]) && is_zero(e[2])) || is_zero(f.eval(e))) continue;
      ++wron_total;
      if (contract(bezout_multi(f, g, e)) == wronskian(f, g, e).compose(frame_for(e))) ++wron;
    }
    // (c) Bezout totals.
    int bez = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const int d = static_cast<int>(rng.uniform_int(1, 4));
      const int dg = static_cast<int>(rng.uniform_int(1, 4));
      if (intersection_cycle(random_form(rng, d, 9), random_form(rng, dg, 9), trial).total_multiplicity() == d * dg)
        ++bez;
    }
    // (d) SOS factor identity.
    RationalPencil quad;
    quad.degree = 2;
    quad.pencil = pencil_from_forms(FormMatrix<Rational>{
        {F("x"), F("-y"), F("-z")}, {F("-y"), F("x"), Form<Rational>(1)}, {F("-z"), Form<Rational>(1), F("x")}});
    quad.m = monomial_vector<Rational>(1);
    quad.v = {Rational(1), Rational(0), Rational(0)};
    const Real sos_quad = extract_sos<Rational>(F("x^2 - y^2 - z^2"), F("x"), kE, quad).residual;
    const Form<Rational> fc = F(fixtures::kCubic);
    auto full = dixon_pipeline(fc, fc.dir_derivative(kE), kE);
    keep("cubic D_e f", fc, kE, full.pencil);
    const Real sos_cubic = extract_sos(fc, full).residual;
    const Real sos_cubic_check = sos_residual(fc.convert<Real>(), full.state.g, extract_sos(fc, full));
    auto rep = rationalize_pencil(fc, kE, monomial_form(full), Rational(1000));
    if (rep.success) keep("cubic rationalized", fc, kE, rep.result->pencil.convert<Real>());
    const bool sos_ok = sos_quad == 0 && sos_cubic <= Real(kSosTol) && sos_cubic_check <= Real(kSosTol);
    // (e) region agreement on every pencil produced above.
    int worst_dis = 0, min_used = kRegionSamples * 10;
    for (const auto& pr : produced) {
      RegionAgreement ra = region_check(pr.f, pr.e, pr.pencil, kRegionSamples);
      worst_dis = std::max(worst_dis, ra.disagreements + ra.sign_violations);
      min_used = std::min(min_used, ra.samples - ra.boundary_excluded);
    }
    const double secs = seconds_since(t0);
    out = "(a) " + std::to_string(agree) + "/200, (b) " + std::to_string(wron) + "/100, (c) " + std::to_string(bez) +
          "/50, (d) quadric " + num(sos_quad) + " cubic " + num(sos_cubic) + ", (e) " + std::to_string(produced.size()) +
          " pencils, max disagreements " + std::to_string(worst_dis) + " with >= " + std::to_string(min_used) +
          " band-excluded samples each; " + num(secs) + " s";
    return agree == 200 && wron == 100 && bez == 50 && sos_ok && worst_dis == 0 && min_used >= kRegionSamples &&
           secs < kSuiteSeconds;
  });

  std::printf("%d criterion(s) failed; %.1f s total\n", failures, seconds_since(all_start));
  return failures;
}
