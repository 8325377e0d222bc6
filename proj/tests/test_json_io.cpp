#include "doctest.h"

#include <string>

#include "fixtures.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/error.hpp"
#include "hypcurve/json_io.hpp"
#include "hypcurve/render.hpp"
#include "hypcurve/random.hpp"

using namespace hypcurve;

namespace {

Form<Rational> F(const std::string& s) { return parse_form(s); }

Form<Rational> random_form(Rng& rng, int d) {
  Form<Rational> f(d);
  for (auto& c : f.coeffs()) c = rng.rational(30, 7);
  return f;
}

}  // namespace

TEST_CASE("forms round-trip") {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    Form<Rational> f = random_form(rng, 1 + t % 4);
    Json j = form_to_json(f);
    CHECK(form_from_json<Rational>(j) == f);
    CHECK(form_from_json<Rational>(Json::parse(j.dump())) == f);
    CHECK(form_from_json<Rational>(Json(f.str())) == f);
    Form<Real> fr = (Real(1) / Real(3)) * f.convert<Real>();
    CHECK(form_from_json<Real>(form_to_json(fr)) == fr);
  }
}

TEST_CASE("pencils round-trip") {
  auto p = pencil_from_forms(fixtures::pencil_forms(fixtures::kEllipticPencil));
  Json j = pencil_to_json(p);
  auto back = pencil_from_json<Rational>(Json::parse(j.dump()));
  CHECK(back.a == p.a);
  CHECK(back.b == p.b);
  CHECK(back.c == p.c);

  Json m;
  m["matrix"] = Json::array();
  for (const auto& row : fixtures::kEllipticPencil) {
    Json r = Json::array();
    for (const char* e : row) r.push_back(e);
    m["matrix"].push_back(r);
  }
  CHECK(pencil_from_json<Rational>(m).c == p.c);

  auto res = dixon_pipeline(F(fixtures::kCubic), F(fixtures::kCubicInterlacer), {1, 0, 0});
  Json jr = pencil_to_json(res.pencil);
  auto pr = pencil_from_json<Real>(Json::parse(jr.dump()));
  CHECK(pr.a == res.pencil.a);
  CHECK(pr.b == res.pencil.b);
  CHECK(pr.c == res.pencil.c);
  CHECK(pr.gamma == res.pencil.gamma);
  CHECK(pencil_to_json(pr).dump() == jr.dump());
}

TEST_CASE("certified pencils round-trip") {
  RationalPencil rp;
  rp.degree = 2;
  rp.pencil = pencil_from_forms(FormMatrix<Rational>{{F("x"), F("-y"), F("-z")},
                                                     {F("-y"), F("x"), Form<Rational>(1)},
                                                     {F("-z"), Form<Rational>(1), F("x")}});
  rp.m = monomial_vector<Rational>(1);
  rp.v = {Rational(1), Rational(0), Rational(0)};
  auto back = certified_from_json<Rational>(Json::parse(certified_to_json(rp).dump()));
  CHECK(back.degree == 2);
  CHECK(back.m == rp.m);
  CHECK(back.v == rp.v);
  CHECK(back.pencil.b == rp.pencil.b);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"({"degree": 2, "terms": [{"exp": [1, 0, 0], "coeff": "1"}]})")),
                  ParseError);
  CHECK_THROWS_AS(form_from_json<Rational>(Json(42)), ParseError);
  CHECK_THROWS_AS(pencil_from_json<Rational>(Json::parse(R"({"A": [["1"]], "B": [["1", "2"]], "C": [["1"]]})")),
                  ParseError);
  CHECK_THROWS_AS(pencil_from_json<Rational>(Json::parse(R"({"matrix": [["x^2"]]})")), ParseError);
  CHECK_THROWS_AS(scalar_from_json<Rational>(Json("1/0x")), ParseError);
}

TEST_CASE("pipeline output is deterministic") {
  auto a = dixon_pipeline(F(fixtures::kCubic), F(fixtures::kCubicInterlacer), {1, 0, 0});
  auto b = dixon_pipeline(F(fixtures::kCubic), F(fixtures::kCubicInterlacer), {1, 0, 0});
  CHECK(pencil_to_json(a.pencil).dump() == pencil_to_json(b.pencil).dump());
  CHECK(diagnostics_to_json(a.diagnostics).dump() == diagnostics_to_json(b.diagnostics).dump());
}

TEST_CASE("svg rendering") {
  RenderInput in;
  in.f = F("x^2 - y^2 - z^2").convert<double>();
  in.e = {1, 0, 0};
  in.g = F("x").convert<double>();
  RenderOptions opt;
  opt.size = 60;
  const std::string svg = render_svg(in, opt);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("id=\"region\"") != std::string::npos);
  CHECK(svg.find("id=\"f\"") != std::string::npos);
  CHECK(svg.find("mismatch") == std::string::npos);
  CHECK(render_svg(in, opt) == svg);

  // A pencil that misses the region shows mismatch pixels.
  in.pencil = pencil_from_forms(FormMatrix<Rational>{{F("x"), Form<Rational>(1)}, {Form<Rational>(1), F("x")}})
                  .convert<double>();
  CHECK(render_svg(in, opt).find("id=\"mismatch\"") != std::string::npos);

  in.e = {1, 1, 0};
  CHECK_THROWS_AS(render_svg(in, opt), InputError);
}
