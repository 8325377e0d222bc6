#pragma once

// JSON encodings. Scalars are strings: "p/q" for rationals, scientific decimals for floats, so
// every value re-parses exactly (floats at their own precision).

#include <string>

#include "json.hpp"

#include "hypcurve/certify.hpp"
#include "hypcurve/curves.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/form.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/pencil.hpp"
#include "hypcurve/rationalize.hpp"
#include "hypcurve/sosbez.hpp"

namespace hypcurve {

using Json = nlohmann::ordered_json;

template <class S>
Json scalar_to_json(const S& v);
/// Reads a string (or a JSON number) as S; decimals are read exactly before conversion.
template <class S>
S scalar_from_json(const Json& j);

Json point_to_json(const Point3<Rational>& p);
Json point_to_json(const Point3<Real>& p);
Json point_to_json(const ProjPoint& p);

/// {"degree", "text", "terms": [{"exp": [i,j,k], "coeff": "..."}]}
template <class S>
Json form_to_json(const Form<S>& f);
/// Accepts the object above or a plain expression string.
template <class S>
Form<S> form_from_json(const Json& j);

template <class S>
Json form_matrix_to_json(const FormMatrix<S>& m);
template <class S>
Json matrix_to_json(const Matrix<S>& m);
template <class S>
Matrix<S> matrix_from_json(const Json& j);

/// {"size", "exact", "gamma", "A", "B", "C"}
template <class S>
Json pencil_to_json(const LinearPencil<S>& p);
/// Also accepts {"matrix": [[linear form expressions]]}.
template <class S>
LinearPencil<S> pencil_from_json(const Json& j);

/// The pencil fields plus "m" (forms) and "v".
template <class S>
Json certified_to_json(const CertifiedPencil<S>& cp);
template <class S>
CertifiedPencil<S> certified_from_json(const Json& j);

Json cycle_to_json(const IntersectionCycle& c);
Json contact_to_json(const ContactData& d);
Json diagnostics_to_json(const DixonDiagnostics& d);
Json certificate_to_json(const Certificate& c);
Json rationalize_to_json(const RationalizeReport& r);
template <class S>
Json sos_to_json(const SosFactor<S>& sf);
Json interlacer_to_json(const InterlacerReport& r);
Json conic_search_to_json(const ConicSearchResult& r);

}  // namespace hypcurve
