#include "hypcurve/json_io.hpp"

#include "hypcurve/error.hpp"

namespace hypcurve {

template <class S>
Json scalar_to_json(const S& v) {
  return to_string(v);
}

template <class S>
S scalar_from_json(const Json& j) {
  Rational q;
  if (j.is_string())
    q = parse_rational(j.get<std::string>());
  else if (j.is_number_integer())
    q = Rational(std::to_string(j.get<long long>()));
  else if (j.is_number())
    q = exact_rational(j.get<double>());
  else
    throw ParseError("expected a number or a numeric string, got " + j.dump());
  return from_rational<S>(q);
}

Json point_to_json(const Point3<Rational>& p) {
  return Json::array({to_string(p[0]), to_string(p[1]), to_string(p[2])});
}

Json point_to_json(const Point3<Real>& p) {
  return Json::array({to_string(p[0]), to_string(p[1]), to_string(p[2])});
}

Json point_to_json(const ProjPoint& p) {
  Json out;
  out["real"] = p.real;
  Json re = Json::array(), im = Json::array();
  for (int v = 0; v < 3; ++v) {
    re.push_back(to_string(to_double(p.coords[v].re)));
    im.push_back(to_string(to_double(p.coords[v].im)));
  }
  out["re"] = re;
  if (!p.real) out["im"] = im;
  out["text"] = p.str();
  return out;
}

template <class S>
Json form_to_json(const Form<S>& f) {
  Json out;
  out["degree"] = f.degree();
  if constexpr (is_exact_v<S>) out["text"] = f.str();
  Json terms = Json::array();
  const auto ex = exponents(f.degree());
  for (std::size_t k = 0; k < ex.size(); ++k) {
    if (is_zero(f.coeffs()[k])) continue;
    terms.push_back({{"exp", {ex[k].i, ex[k].j, ex[k].k}}, {"coeff", to_string(f.coeffs()[k])}});
  }
  out["terms"] = terms;
  return out;
}

template <class S>
Form<S> form_from_json(const Json& j) {
  if (j.is_string()) return parse_form(j.get<std::string>()).template convert<S>();
  if (!j.is_object()) throw ParseError("a form must be an expression string or an object");
  if (!j.contains("terms")) {
    if (j.contains("text")) return form_from_json<S>(j.at("text"));
    throw ParseError("form object needs \"terms\" or \"text\"");
  }
  const int d = j.at("degree").get<int>();
  if (d < 0) throw ParseError("negative form degree");
  Form<S> f(d);
  for (const auto& t : j.at("terms")) {
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != 3) throw ParseError("term exponent must be [i, j, k]");
    const int a = e[0].get<int>(), b = e[1].get<int>(), c = e[2].get<int>();
    if (a < 0 || b < 0 || c < 0 || a + b + c != d) throw ParseError("term exponent does not match the degree");
    f.coeff(a, b, c) += scalar_from_json<S>(t.at("coeff"));
  }
  return f;
}

template <class S>
Json form_matrix_to_json(const FormMatrix<S>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& f : row) r.push_back(form_to_json(f));
    out.push_back(r);
  }
  return out;
}

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    out.push_back(r);
  }
  return out;
}

template <class S>
Matrix<S> matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("a matrix must be an array of rows");
  const std::size_t n = j.size();
  const std::size_t cols = n == 0 ? 0 : j[0].size();
  Matrix<S> m(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json<S>(j[i][k]);
  }
  return m;
}

template <class S>
Json pencil_to_json(const LinearPencil<S>& p) {
  Json out;
  out["size"] = p.size;
  out["exact"] = is_exact_v<S>;
  out["gamma"] = to_string(p.gamma);
  out["A"] = matrix_to_json(p.a);
  out["B"] = matrix_to_json(p.b);
  out["C"] = matrix_to_json(p.c);
  return out;
}

template <class S>
LinearPencil<S> pencil_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("a pencil must be a JSON object");
  if (j.contains("matrix")) {
    const auto& rows = j.at("matrix");
    FormMatrix<Rational> m;
    for (const auto& row : rows) {
      std::vector<Form<Rational>> r;
      for (const auto& entry : row) {
        Form<Rational> f = form_from_json<Rational>(entry);
        if (f.is_zero()) f = Form<Rational>(1);
        if (f.degree() != 1) throw ParseError("pencil entries must be linear forms");
        r.push_back(f);
      }
      if (r.size() != rows.size()) throw ParseError("pencil matrix must be square");
      m.push_back(r);
    }
    return pencil_from_forms(m).template convert<S>();
  }
  S gamma = j.contains("gamma") ? scalar_from_json<S>(j.at("gamma")) : S(1);
  try {
    return LinearPencil<S>(matrix_from_json<S>(j.at("A")), matrix_from_json<S>(j.at("B")),
                           matrix_from_json<S>(j.at("C")), gamma);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

template <class S>
Json certified_to_json(const CertifiedPencil<S>& cp) {
  Json out = pencil_to_json(cp.pencil);
  out["degree"] = cp.degree;
  Json m = Json::array();
  for (const auto& f : cp.m) m.push_back(form_to_json(f));
  out["m"] = m;
  Json v = Json::array();
  for (const auto& x : cp.v) v.push_back(to_string(x));
  out["v"] = v;
  return out;
}

template <class S>
CertifiedPencil<S> certified_from_json(const Json& j) {
  CertifiedPencil<S> cp;
  cp.pencil = pencil_from_json<S>(j);
  cp.degree = j.at("degree").get<int>();
  for (const auto& f : j.at("m")) cp.m.push_back(form_from_json<S>(f));
  for (const auto& x : j.at("v")) cp.v.push_back(scalar_from_json<S>(x));
  if (cp.m.size() != cp.pencil.size || cp.v.size() != cp.pencil.size)
    throw ParseError("kernel certificate length does not match the pencil size");
  return cp;
}

Json cycle_to_json(const IntersectionCycle& c) {
  Json out;
  out["deg_f"] = c.deg_f;
  out["deg_g"] = c.deg_g;
  out["seed"] = c.seed;
  out["total_multiplicity"] = c.total_multiplicity();
  Json pts = Json::array();
  for (const auto& p : c.points) {
    Json e = point_to_json(p.point);
    e["multiplicity"] = p.multiplicity;
    pts.push_back(e);
  }
  out["points"] = pts;
  return out;
}

Json contact_to_json(const ContactData& d) {
  Json out;
  out["r"] = d.r;
  out["s"] = d.s;
  Json contacts = Json::array();
  for (const auto& c : d.contacts) {
    Json e = point_to_json(c.point);
    e["half_multiplicity"] = c.half_multiplicity;
    contacts.push_back(e);
  }
  out["contacts"] = contacts;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < d.pairs.size(); ++i)
    pairs.push_back({{"q", point_to_json(d.pairs[i].q)},
                     {"line", form_to_json(d.lines[i])}});
  out["pairs"] = pairs;
  return out;
}

Json diagnostics_to_json(const DixonDiagnostics& d) {
  auto num = [](const Real& x) { return to_string(to_double(x)); };
  Json out;
  out["noether_residual"] = num(d.noether_residual);
  out["double_root_residual"] = num(d.double_root_residual);
  out["lemma_residual"] = num(d.lemma_residual);
  out["minor_residual"] = num(d.minor_residual);
  out["step6_min"] = num(d.step6_min);
  out["fit_residual"] = num(d.fit_residual);
  out["det_residual"] = num(d.det_residual);
  out["min_eigenvalue"] = num(d.min_eigenvalue);
  out["g_minor_residual"] = num(d.g_minor_residual);
  out["h_minor_residual"] = num(d.h_minor_residual);
  out["perturbation"] = d.perturbation ? Json(to_string(*d.perturbation)) : Json(nullptr);
  out["g_flipped"] = d.g_flipped;
  out["f_flipped"] = d.f_flipped;
  return out;
}

Json certificate_to_json(const Certificate& c) {
  auto num = [](const Real& x) { return to_string(to_double(x)); };
  Json out;
  out["pass"] = c.pass;
  out["exact"] = c.exact;
  out["size"] = c.size;
  out["gamma"] = c.gamma;
  out["h"] = c.h;
  out["h_degree"] = c.h_degree;
  out["det_residual"] = num(c.det_residual);
  out["min_eigenvalue"] = num(c.min_eigenvalue);
  out["definite"] = c.definite;
  out["g_minor_residual"] = c.g_minor_residual ? Json(num(*c.g_minor_residual)) : Json(nullptr);
  out["h_minors_checked"] = c.h_minors_checked;
  out["h_minor_residual"] = num(c.h_minor_residual);
  Json region;
  region["samples"] = c.region.samples;
  region["disagreements"] = c.region.disagreements;
  region["boundary_excluded"] = c.region.boundary_excluded;
  region["sign_violations"] = c.region.sign_violations;
  Json wit = Json::array();
  for (const auto& w : c.region.witnesses)
    wit.push_back({to_string(w[0]), to_string(w[1]), to_string(w[2])});
  region["witnesses"] = wit;
  out["region"] = region;
  Json cor = Json::array();
  for (const auto& e : c.corank) {
    Json sv = Json::array();
    for (double v : e.singular_values) sv.push_back(to_string(v));
    cor.push_back({{"label", e.label},
                   {"point", point_to_json(e.point)},
                   {"expected", e.expected},
                   {"observed", e.observed},
                   {"singular_values", sv}});
  }
  out["corank"] = cor;
  out["reasons"] = c.reasons;
  return out;
}

Json rationalize_to_json(const RationalizeReport& r) {
  Json out;
  out["success"] = r.success;
  out["message"] = r.message;
  out["max_den_used"] = to_string(r.max_den_used);
  out["attempts"] = r.attempts;
  out["parameters"] = r.parameters;
  out["distance"] = to_string(r.distance);
  out["pencil"] = certified_to_json(r.success ? *r.result : r.nearest);
  return out;
}

template <class S>
Json sos_to_json(const SosFactor<S>& sf) {
  Json out;
  out["degree"] = sf.degree;
  out["e"] = point_to_json(sf.e);
  out["lambda"] = to_string(sf.lambda);
  out["residual"] = to_string(to_double(sf.residual));
  out["S"] = form_matrix_to_json(sf.s);
  out["A"] = matrix_to_json(sf.a);
  return out;
}

Json interlacer_to_json(const InterlacerReport& r) {
  Json out;
  out["is_interlacer"] = r.is_interlacer;
  out["strict"] = r.strict;
  out["g_positive_at_e"] = r.g_positive_at_e;
  out["wronskian_min"] = to_string(to_double(r.wronskian_min));
  out["samples"] = r.samples;
  out["line_failures"] = r.line_failures.size();
  out["bezout_psd_failures"] = r.bezout_psd_failures.size();
  out["wronskian_failures"] = r.wronskian_failures.size();
  return out;
}

Json conic_search_to_json(const ConicSearchResult& r) {
  Json out;
  out["success"] = r.success;
  out["message"] = r.message;
  out["conic"] = form_to_json(r.conic);
  out["theta"] = to_string(r.theta);
  out["lambda"] = to_string(r.lambda);
  Json contacts = Json::array();
  for (const auto& c : r.contacts)
    contacts.push_back({{"point", {to_string(c.point[0]), to_string(c.point[1]), to_string(c.point[2])}},
                        {"residual", to_string(c.residual)},
                        {"inner", c.inner}});
  out["contacts"] = contacts;
  return out;
}

#define HYPCURVE_INSTANTIATE(S)                                    \
  template Json scalar_to_json<S>(const S&);                       \
  template S scalar_from_json<S>(const Json&);                     \
  template Json form_to_json<S>(const Form<S>&);                   \
  template Form<S> form_from_json<S>(const Json&);                 \
  template Json form_matrix_to_json<S>(const FormMatrix<S>&);      \
  template Json matrix_to_json<S>(const Matrix<S>&);               \
  template Matrix<S> matrix_from_json<S>(const Json&);             \
  template Json pencil_to_json<S>(const LinearPencil<S>&);         \
  template LinearPencil<S> pencil_from_json<S>(const Json&);       \
  template Json certified_to_json<S>(const CertifiedPencil<S>&);   \
  template CertifiedPencil<S> certified_from_json<S>(const Json&); \
  template Json sos_to_json<S>(const SosFactor<S>&);

HYPCURVE_INSTANTIATE(Rational)
HYPCURVE_INSTANTIATE(Real)

#undef HYPCURVE_INSTANTIATE

template Json form_to_json<double>(const Form<double>&);

}  // namespace hypcurve
