#include "hypcurve/sosbez.hpp"

#include <algorithm>

#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/linalg.hpp"

namespace hypcurve {

namespace {

template <class S>
Real relative_tol() {
  if constexpr (is_exact_v<S>)
    return Real(0);
  else
    return Real("1e-9");
}

template <class S>
bool definite(const Matrix<S>& a) {
  if constexpr (is_exact_v<S>)
    return is_positive_definite(a);
  else
    return min_eigenvalue(a) > 0;
}

}  // namespace

template <class S>
SosFactor<S> extract_sos(const Form<S>& f, const Form<S>& g, const Point3<S>& e,
                         const CertifiedPencil<S>& cp) {
  const int d = f.degree();
  const std::size_t n = cp.pencil.size;
  if (d < 1) throw InputError("f must have positive degree");
  if (g.degree() != d - 1) throw InputError("g must have degree deg f - 1");
  if (cp.m.size() != n || cp.v.size() != n) throw InputError("kernel certificate does not match the pencil");
  for (const auto& m : cp.m)
    if (!m.is_zero() && m.degree() != d - 1) throw InputError("kernel forms must have degree deg f - 1");

  // M m = f v.
  const FormMatrix<S> mf = cp.pencil.forms();
  Real worst(0), scale(0);
  for (std::size_t i = 0; i < n; ++i) {
    Form<S> row = -(cp.v[i] * f);
    Form<S> mm(d);
    for (std::size_t j = 0; j < n; ++j) mm += mf[i][j] * cp.m[j];
    row += mm;
    worst = std::max(worst, to_real(row.max_abs_coeff()));
    scale = std::max(scale, to_real(mm.max_abs_coeff()));
  }
  if (is_zero(scale) || worst > relative_tol<S>() * scale / 10)
    throw InternalConsistencyError("the relation M m = f v fails");

  const Matrix<S> t = frame_for(e);
  const LinearPencil<S> pt = cp.pencil.compose(t);
  const Form<S> gt = g.compose(t);
  Form<S> gm(d - 1);
  for (std::size_t i = 0; i < n; ++i) gm += cp.v[i] * cp.m[i].compose(t);

  // v^T m = lambda g.
  S dot(0);
  for (std::size_t k = 0; k < gt.size(); ++k) dot += gm.coeffs()[k] * gt.coeffs()[k];
  const S lambda = dot / gt.coeff_norm2();
  const Real off = to_real((gm - lambda * gt).max_abs_coeff());
  if (sign_of(lambda) <= 0 || off > relative_tol<S>() * to_real(gm.max_abs_coeff()) / 10)
    throw InternalConsistencyError("v^T m is not a positive multiple of g");

  SosFactor<S> sf;
  sf.degree = d;
  sf.e = e;
  sf.lambda = lambda;
  sf.a = (S(1) / lambda) * pt.a;
  sf.s.assign(n, std::vector<Form<S>>(static_cast<std::size_t>(d)));
  for (std::size_t mu = 0; mu < n; ++mu) {
    const Form<S> m = cp.m[mu].compose(t);
    for (int j = 0; j < d; ++j) {
      Form<S> part(d - 1 - j);
      for (int k = 0; k <= d - 1 - j; ++k) part.coeff(0, d - 1 - j - k, k) = m.coeff(j, d - 1 - j - k, k);
      sf.s[mu][static_cast<std::size_t>(j)] = part;
    }
  }
  sf.residual = sos_residual(f, g, sf);
  if (sf.residual > relative_tol<S>()) throw InternalConsistencyError("B(f,g) differs from S^T A S (residual " +
                                                                       to_string(sf.residual) + ")");
  if (!definite(sf.a)) throw InternalConsistencyError("A is not positive definite");
  return sf;
}

SosFactor<Real> extract_sos(const Form<Rational>& f, const DixonResult& result) {
  if (result.state.data.r != 0) throw InputError("the SOS factorization needs a full-size pencil (r = 0)");
  const Point3<Real> e{to_real(result.state.e[0]), to_real(result.state.e[1]), to_real(result.state.e[2])};
  return extract_sos<Real>(f.convert<Real>(), result.state.g, e, kernel_relation(result));
}

template <class S>
FormMatrix<S> sos_product(const SosFactor<S>& sf) {
  const std::size_t n = sf.s.size();
  const std::size_t d = static_cast<std::size_t>(sf.degree);
  FormMatrix<S> out(d, std::vector<Form<S>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Form<S> acc(2 * sf.degree - 2 - static_cast<int>(i + j));
      for (std::size_t mu = 0; mu < n; ++mu) {
        if (sf.s[mu][i].is_zero()) continue;
        Form<S> as(sf.degree - 1 - static_cast<int>(j));
        for (std::size_t nu = 0; nu < n; ++nu)
          if (!is_zero(sf.a(mu, nu))) as += sf.a(mu, nu) * sf.s[nu][j];
        acc += sf.s[mu][i] * as;
      }
      out[i][j] = acc;
    }
  return out;
}

template <class S>
Real sos_residual(const Form<S>& f, const Form<S>& g, const SosFactor<S>& sf) {
  const FormMatrix<S> b = bezout_multi(f, g, sf.e);
  const std::size_t d = static_cast<std::size_t>(sf.degree);
  if (sf.s.empty() || sf.s.front().size() != d || b.size() != d || sf.a.rows() != sf.s.size())
    throw InputError("SOS factor shapes do not match deg f");
  const FormMatrix<S> p = sos_product(sf);
  Real worst(0), scale(0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      scale = std::max(scale, to_real(b[i][j].max_abs_coeff()));
      worst = std::max(worst, to_real((b[i][j] - p[i][j]).max_abs_coeff()));
    }
  return is_zero(scale) ? worst : Real(worst / scale);
}

template <class S>
bool verify_sos(const Form<S>& f, const Form<S>& g, const SosFactor<S>& sf, const Real& tol) {
  try {
    return sos_residual(f, g, sf) <= tol && definite(sf.a);
  } catch (const InputError&) {
    return false;
  }
}

#define HYPCURVE_INSTANTIATE(S)                                                                     \
  template SosFactor<S> extract_sos<S>(const Form<S>&, const Form<S>&, const Point3<S>&,            \
                                       const CertifiedPencil<S>&);                                  \
  template FormMatrix<S> sos_product<S>(const SosFactor<S>&);                                       \
  template Real sos_residual<S>(const Form<S>&, const Form<S>&, const SosFactor<S>&);               \
  template bool verify_sos<S>(const Form<S>&, const Form<S>&, const SosFactor<S>&, const Real&);

HYPCURVE_INSTANTIATE(Rational)
HYPCURVE_INSTANTIATE(Real)

#undef HYPCURVE_INSTANTIATE

}  // namespace hypcurve
