#include "hypcurve/certify.hpp"

#include <algorithm>
#include <cmath>

#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/linalg.hpp"
#include "hypcurve/random.hpp"

namespace hypcurve {

namespace {

template <class S>
FormMatrix<S> delete_row_col(const FormMatrix<S>& m, std::size_t row, std::size_t col) {
  FormMatrix<S> sub;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Form<S>> r;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    sub.push_back(std::move(r));
  }
  return sub;
}

template <class S>
Real residual_of(const DivisionResult<S>& r) {
  return to_real(r.residual);
}

template <class S>
Point3<S> random_point(Rng& rng) {
  if constexpr (is_exact_v<S>) {
    for (;;) {
      Point3<S> p{rng.rational(40, 13), rng.rational(40, 13), rng.rational(40, 13)};
      if (!is_zero(p[0]) || !is_zero(p[1]) || !is_zero(p[2])) return p;
    }
  } else {
    auto v = rng.sphere();
    return {S(v[0]), S(v[1]), S(v[2])};
  }
}

void region_sampling(const Form<double>& f, const Form<double>& h, const Point3<double>& e,
                     const LinearPencil<double>& p, const CertifyOptions& opt, RegionAgreement& out) {
  Rng rng(opt.seed ^ 0xCE27ULL);
  const Form<double> fn = f.normalized();
  const Form<double> hn = h.normalized();
  auto psd = [&](const Point3<double>& a) {
    auto eig = symmetric_eigenvalues(p.at(a));
    double scale = std::max(std::fabs(eig.front()), std::fabs(eig.back()));
    return eig.front() >= -opt.psd_tol * scale;
  };
  for (int s = 0; s < opt.samples; ++s) {
    auto v = rng.sphere();
    Point3<double> a{v[0], v[1], v[2]};
    ++out.samples;
    if (std::fabs(fn.eval(a)) < opt.boundary_band ||
        (hn.degree() > 0 && std::fabs(hn.eval(a)) < opt.boundary_band)) {
      ++out.boundary_excluded;
      continue;
    }
    const Point3<double> neg{-a[0], -a[1], -a[2]};
    const bool in_m = psd(a);
    const bool in_f = cone_contains(fn, e, a);
    if (in_m != in_f) {
      ++out.disagreements;
      if (out.witnesses.size() < 5) out.witnesses.push_back(a);
    }
    if ((in_m && psd(neg)) || (in_f && cone_contains(fn, e, neg))) ++out.sign_violations;
  }
}

int count_small(std::vector<Real> sv, double tol, std::vector<double>& rel) {
  std::sort(sv.begin(), sv.end());
  Real top = sv.empty() ? Real(1) : sv.back();
  int count = 0;
  for (const auto& v : sv) {
    double r = to_double(Real(v / top));
    rel.push_back(r);
    if (r <= tol) ++count;
  }
  return count;
}

CorankEntry corank_at(const LinearPencil<Real>& p, const std::string& label, const ProjPoint& pt,
                      int expected, double tol) {
  CorankEntry entry;
  entry.label = label;
  entry.point = pt;
  entry.expected = expected;
  std::vector<Real> sv = complex_singular_values(p.at(pt.real_part()), p.at(pt.imag_part()));
  entry.observed = count_small(sv, tol, entry.singular_values);
  return entry;
}

template <class S>
Certificate certify_impl(const Form<S>& f_in, const Point3<S>& e, const LinearPencil<S>& p,
                         const std::optional<Form<S>>& g, const DixonState* st,
                         const CertifyOptions& opt) {
  constexpr bool exact = is_exact_v<S>;
  Certificate cert;
  cert.exact = exact;
  cert.size = static_cast<int>(p.size);
  auto fail = [&](const std::string& why) { cert.reasons.push_back(why); };
  if (p.size == 0) throw InputError("empty pencil");
  if (f_in.degree() > static_cast<int>(p.size))
    throw InputError("pencil of size " + std::to_string(p.size) + " cannot represent a form of degree " +
                     std::to_string(f_in.degree()));
  if (g && g->degree() != f_in.degree() - 1) throw InputError("g must have degree deg f - 1");
  const S fe = f_in.eval(e);
  if (is_zero(fe)) throw InputError("f(e) = 0");
  const Form<S> f = sign_of(fe) < 0 ? -f_in : f_in;
  if (!p.is_symmetric()) fail("pencil is not symmetric");

  const Real tol_identity = exact ? Real(0) : Real("1e-10");

  // (a) det(M) = gamma f h.
  const FormMatrix<S> forms = p.forms();
  const Form<S> det = determinant(forms);
  Form<S> h = Form<S>::constant(S(1));
  S gamma(0);
  if (det.is_zero()) {
    fail("det(M) vanishes identically");
    cert.det_residual = Real(1);
  } else {
    auto div = divide(det, f);
    cert.det_residual = residual_of(div);
    S scale = div.quotient.max_abs_coeff();
    S at_e = div.quotient.eval(e);
    if (is_zero(scale) || is_zero(at_e)) {
      fail("det(M) / f vanishes at e");
    } else {
      gamma = sign_of(at_e) < 0 ? S(-scale) : scale;
      h = (S(1) / gamma) * div.quotient;
    }
    Rng rng(opt.seed ^ 0xDE7ULL);
    Real worst(0), size(0);
    for (int s = 0; s < 50; ++s) {
      Point3<S> a = random_point<S>(rng);
      S lhs;
      if constexpr (exact)
        lhs = determinant(p.at(a));
      else
        lhs = determinant_numeric(p.at(a));
      S rhs = gamma * f.eval(a) * h.eval(a);
      worst = std::max(worst, to_real(abs_of(S(lhs - rhs))));
      size = std::max(size, to_real(abs_of(rhs)));
    }
    if (!is_zero(size)) worst /= size;
    cert.det_residual = std::max(cert.det_residual, worst);
  }
  cert.h_degree = h.degree();
  cert.h = h.str();
  cert.gamma = to_string(gamma);
  if (cert.det_residual > tol_identity) fail("det(M) is not gamma f h (residual " + to_string(cert.det_residual) + ")");
  if (sign_of(gamma) <= 0 && !det.is_zero()) fail("gamma is not positive");

  // (b) M(e) positive definite.
  const Matrix<S> me = p.at(e);
  cert.min_eigenvalue = min_eigenvalue(me.template map<Real>([](const S& v) { return to_real(v); }));
  if constexpr (exact)
    cert.definite = is_positive_definite(me);
  else
    cert.definite = cert.min_eigenvalue > 0;
  if (!cert.definite) fail("M(e) is not positive definite");

  // (c) minors.
  if (g) {
    cert.g_minor_residual = residual_of(divide(determinant(delete_row_col(forms, 0, 0)), *g));
    if (*cert.g_minor_residual > tol_identity) fail("g does not divide the minor M_{1,1}");
  }
  if ((g || st) && h.degree() > 0) {
    cert.h_minors_checked = true;
    for (std::size_t l = 0; l < p.size; ++l) {
      Real r = residual_of(divide(determinant(delete_row_col(forms, 0, l)), h));
      cert.h_minor_residual = std::max(cert.h_minor_residual, r);
    }
    if (cert.h_minor_residual > tol_identity) fail("h does not divide every minor M_{1,l}");
  }

  // (d) region agreement in double precision.
  region_sampling(f.template convert<double>(), h.template convert<double>(),
                  {to_double(e[0]), to_double(e[1]), to_double(e[2])}, p.template convert<double>(),
                  opt, cert.region);
  if (cert.region.disagreements > 0)
    fail(std::to_string(cert.region.disagreements) + " sampled points disagree between S(M) and C(f,e)");
  if (cert.region.sign_violations > 0) fail("a and -a both inside at some sample");

  // (e) corank table.
  if (st) {
    const LinearPencil<Real> pr = p.template convert<Real>();
    const auto& lines = st->data.lines;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j)
        cert.corank.push_back(corank_at(pr, "s_" + std::to_string(i + 1) + std::to_string(j + 1),
                                        make_point(st->s_points[i][j]), 2, opt.corank_tol));
      for (std::size_t j = 0; j < st->r_points[i].size(); ++j)
        cert.corank.push_back(corank_at(pr, "r_" + std::to_string(i + 1) + std::to_string(j + 1),
                                        st->r_points[i][j], 2, opt.corank_tol));
    }
    for (std::size_t j = 0; j < st->data.pairs.size(); ++j) {
      cert.corank.push_back(corank_at(pr, "q_" + std::to_string(j + 1), st->data.pairs[j].q, 1,
                                      opt.corank_tol));
    }
    for (const auto& c : cert.corank)
      if (c.observed != c.expected)
        fail("corank at " + c.label + " is " + std::to_string(c.observed) + ", expected " +
             std::to_string(c.expected));
  }

  cert.pass = cert.reasons.empty();
  return cert;
}

}  // namespace

Certificate certify_pencil(const Form<Rational>& f, const Point3<Rational>& e,
                           const LinearPencil<Rational>& pencil, const std::optional<Form<Rational>>& g,
                           const CertifyOptions& options) {
  return certify_impl<Rational>(f, e, pencil, g, nullptr, options);
}

Certificate certify_pencil(const Form<Real>& f, const Point3<Real>& e, const LinearPencil<Real>& pencil,
                           const std::optional<Form<Real>>& g, const DixonState* state,
                           const CertifyOptions& options) {
  return certify_impl<Real>(f, e, pencil, g, state, options);
}

}  // namespace hypcurve
