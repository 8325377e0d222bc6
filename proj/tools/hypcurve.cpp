// hypcurve: command-line front end. Results are JSON on stdout or in the -o file; `render`
// writes SVG. Exit codes: 0 success or pass, 1 negative verdict, 2 input error, 3 numerical
// or internal failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hypcurve/certify.hpp"
#include "hypcurve/curves.hpp"
#include "hypcurve/dixon.hpp"
#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/json_io.hpp"
#include "hypcurve/rationalize.hpp"
#include "hypcurve/render.hpp"
#include "hypcurve/sosbez.hpp"

using namespace hypcurve;

namespace {

struct RunConfig {
  std::string command;
  std::string f_arg, g_arg, p_arg;
  std::string e_arg;
  unsigned precision = 0;
  int samples = 0;  // 0: the command's default
  std::uint64_t seed = 0;
  std::string max_denom = "1000";
  bool perturb = false;
  bool exact = false;
  std::string output;
  int size = 400;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// A path to a JSON or text file, or the value itself.
Json load_arg(const std::string& arg) {
  std::string text = arg;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  text = trim(text);
  if (!text.empty() && (text[0] == '{' || text[0] == '[' || text[0] == '"')) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& ex) {
      throw ParseError(std::string("malformed JSON: ") + ex.what());
    }
  }
  return Json(text);
}

Form<Rational> load_form(const std::string& arg, const char* flag) {
  if (arg.empty()) throw InputError(std::string("missing ") + flag);
  Json j = load_arg(arg);
  if (j.is_object() && j.contains("form")) j = j.at("form");
  return form_from_json<Rational>(j);
}

Json load_pencil_json(const std::string& arg) {
  if (arg.empty()) throw InputError("missing -p");
  Json j = load_arg(arg);
  if (j.is_object() && j.contains("pencil")) j = j.at("pencil");
  if (!j.is_object()) throw ParseError("-p must name a pencil JSON object");
  return j;
}

Point3<Rational> parse_e(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  Point3<Rational> e;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) throw ParseError("-e takes three comma-separated coordinates");
    e[k++] = parse_rational(trim(item));
  }
  if (k != 3) throw ParseError("-e takes three comma-separated coordinates");
  if (e[0] == 0 && e[1] == 0 && e[2] == 0) throw InputError("e must be nonzero");
  return e;
}

Point3<double> to_double3(const Point3<Rational>& p) { return {to_double(p[0]), to_double(p[1]), to_double(p[2])}; }

struct Context {
  RunConfig cfg;
  Json out;
  int code = 0;
  std::string raw;  // non-JSON output (render)

  int samples(int fallback) const { return cfg.samples > 0 ? cfg.samples : fallback; }
  Point3<Rational> e() const { return cfg.e_arg.empty() ? Point3<Rational>{1, 0, 0} : parse_e(cfg.e_arg); }
};

Form<Rational> interlacer_or_derivative(const Context& cx, const Form<Rational>& f, const Point3<Rational>& e) {
  return cx.cfg.g_arg.empty() ? f.dir_derivative(e) : load_form(cx.cfg.g_arg, "-g");
}

DixonResult run_pipeline(Context& cx, const Form<Rational>& f, const Form<Rational>& g, const Point3<Rational>& e) {
  DixonOptions opt;
  opt.perturb = cx.cfg.perturb;
  opt.seed = cx.cfg.seed;
  return dixon_pipeline(f, g, e, opt);
}

void cmd_check_hyperbolic(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const auto e = cx.e();
  auto rep = is_hyperbolic(f, e, cx.samples(64), cx.cfg.seed);
  cx.out["hyperbolic"] = rep.hyperbolic;
  cx.out["roots_ok"] = rep.roots_ok;
  cx.out["bezout_ok"] = rep.bezout_ok;
  cx.out["lines_sampled"] = rep.samples;
  cx.out["witness"] = rep.witness ? point_to_json(*rep.witness) : Json(nullptr);
  cx.code = rep.hyperbolic ? 0 : 1;
}

void cmd_check_interlacer(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const Form<Rational> g = load_form(cx.cfg.g_arg, "-g");
  auto rep = is_interlacer(f, g, cx.e(), cx.samples(64), cx.cfg.seed);
  cx.out["report"] = interlacer_to_json(rep);
  cx.code = rep.is_interlacer ? 0 : 1;
}

void cmd_intersect(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const Form<Rational> g = load_form(cx.cfg.g_arg, "-g");
  auto cycle = intersection_cycle(f, g, cx.cfg.seed);
  cx.out["cycle"] = cycle_to_json(cycle);
  if (!cx.cfg.e_arg.empty()) {
    const auto e = cx.e();
    cx.out["contact"] = contact_to_json(classify_cycle(cycle, {to_real(e[0]), to_real(e[1]), to_real(e[2])}));
  }
}

void cmd_dixon(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const auto e = cx.e();
  const Form<Rational> g = load_form(cx.cfg.g_arg, "-g");
  auto res = run_pipeline(cx, f, g, e);
  cx.out["size"] = res.pencil.size;
  cx.out["h"] = form_to_json(res.state.h.normalized());
  cx.out["contact"] = contact_to_json(res.state.data);
  cx.out["diagnostics"] = diagnostics_to_json(res.diagnostics);
  cx.out["pencil"] = pencil_to_json(res.pencil);
}

void cmd_certify(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const auto e = cx.e();
  const Json pj = load_pencil_json(cx.cfg.p_arg);
  CertifyOptions opt;
  opt.samples = cx.samples(2000);
  opt.seed = cx.cfg.seed;
  const bool exact = cx.cfg.exact || pj.contains("matrix") || pj.value("exact", true);
  std::optional<Form<Rational>> g;
  if (!cx.cfg.g_arg.empty()) g = load_form(cx.cfg.g_arg, "-g");
  Certificate cert;
  if (exact) {
    cert = certify_pencil(f, e, pencil_from_json<Rational>(pj), g, opt);
  } else {
    std::optional<Form<Real>> gr;
    if (g) gr = g->convert<Real>();
    cert = certify_pencil(f.convert<Real>(), {to_real(e[0]), to_real(e[1]), to_real(e[2])},
                          pencil_from_json<Real>(pj), gr, nullptr, opt);
  }
  cx.out["certificate"] = certificate_to_json(cert);
  cx.code = cert.pass ? 0 : 1;
}

void cmd_rationalize(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const auto e = cx.e();
  if (!cx.cfg.p_arg.empty()) {
    // An exact pencil: find a kernel certificate and verify it.
    const auto p = pencil_from_json<Rational>(load_pencil_json(cx.cfg.p_arg));
    auto rp = kernel_certificate(f, p);
    const bool ok = rp && verify_rational(f, e, *rp, 40, cx.cfg.seed);
    cx.out["success"] = ok;
    cx.out["pencil"] = rp ? certified_to_json(*rp) : Json(nullptr);
    cx.code = ok ? 0 : 1;
    return;
  }
  const Rational max_den = parse_rational(cx.cfg.max_denom);
  if (max_den < 1 || max_den.get_den() != 1) throw InputError("--max-denom must be a positive integer");
  auto res = run_pipeline(cx, f, interlacer_or_derivative(cx, f, e), e);
  if (res.state.data.r != 0)
    throw InputError("rationalization needs a full-size pencil (no real contact points); try g = D_e f");
  auto rep = rationalize_pencil(f, e, monomial_form(res), max_den, 3, cx.cfg.seed);
  cx.out["report"] = rationalize_to_json(rep);
  cx.code = rep.success ? 0 : 1;
}

void cmd_bezout(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const Form<Rational> g = load_form(cx.cfg.g_arg, "-g");
  const auto b = bezout_multi(f, g, cx.e());
  cx.out["size"] = b.size();
  cx.out["matrix"] = form_matrix_to_json(b);
}

void cmd_sos(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const auto e = cx.e();
  const Form<Rational> g = interlacer_or_derivative(cx, f, e);
  auto res = run_pipeline(cx, f, g, e);
  if (cx.cfg.exact) {
    const Rational max_den = parse_rational(cx.cfg.max_denom);
    auto rep = rationalize_pencil(f, e, monomial_form(res), max_den, 3, cx.cfg.seed);
    if (!rep.success) {
      cx.out["message"] = "rationalization failed: " + rep.message;
      cx.code = 1;
      return;
    }
    const RationalPencil& rp = *rep.result;
    Form<Rational> gt(f.degree() - 1);
    for (std::size_t i = 0; i < rp.m.size(); ++i) gt += rp.v[i] * rp.m[i];
    auto sf = extract_sos<Rational>(f, gt, e, rp);
    cx.out["g"] = form_to_json(gt);
    cx.out["sos"] = sos_to_json(sf);
    cx.code = verify_sos(f, gt, sf, Real(0)) ? 0 : 1;
    return;
  }
  auto sf = extract_sos(f, res);
  cx.out["g"] = form_to_json(res.state.g);
  cx.out["sos"] = sos_to_json(sf);
  cx.code = verify_sos(f.convert<Real>(), res.state.g, sf, Real("1e-9")) ? 0 : 1;
}

void cmd_conic_search(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  auto res = real_contact_conic_search(f, cx.e(), cx.samples(180), cx.cfg.seed);
  cx.out["result"] = conic_search_to_json(res);
  cx.code = res.success ? 0 : 1;
}

void cmd_render(Context& cx) {
  const Form<Rational> f = load_form(cx.cfg.f_arg, "-f");
  const auto e = cx.e();
  RenderInput in;
  in.f = f.convert<double>();
  in.e = to_double3(e);
  if (!cx.cfg.g_arg.empty()) {
    const Form<Rational> g = load_form(cx.cfg.g_arg, "-g");
    in.g = g.convert<double>();
    try {
      auto data = classify_cycle(intersection_cycle(f, g, cx.cfg.seed),
                                 {to_real(e[0]), to_real(e[1]), to_real(e[2])});
      for (const auto& l : data.lines) in.lines.push_back(l.convert<double>());
    } catch (const InputError&) {
      // Not a curve of real contact: draw without lines.
    }
  }
  if (!cx.cfg.p_arg.empty()) in.pencil = pencil_from_json<Rational>(load_pencil_json(cx.cfg.p_arg)).convert<double>();
  RenderOptions opt;
  opt.size = cx.cfg.size;
  cx.raw = render_svg(in, opt);
}

int exit_code_for(const Error& ex) { return ex.kind() == ErrorKind::kInput ? 2 : 3; }

}  // namespace

int main(int argc, char** argv) {
  Context cx;
  RunConfig& cfg = cx.cfg;
  CLI::App app{"Spectrahedral representations of plane hyperbolic curves"};
  app.add_option("command", cfg.command, "subcommand")
      ->required()
      ->check(CLI::IsMember({"check-hyperbolic", "check-interlacer", "intersect", "dixon", "certify",
                             "rationalize", "bezout", "sos", "conic-search", "render"}));
  app.add_option("-f,--form", cfg.f_arg, "form f: JSON or text expression, inline or a file");
  app.add_option("-g,--interlacer", cfg.g_arg, "form g");
  app.add_option("-p,--pencil", cfg.p_arg, "pencil JSON");
  app.add_option("-e,--direction", cfg.e_arg, "x,y,z (default 1,0,0)");
  app.add_option("--precision", cfg.precision, "working precision in bits (>= 64)")->check(CLI::Range(64u, 1u << 20));
  app.add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed (default 0)");
  app.add_option("--max-denom", cfg.max_denom, "rationalization denominator bound (default 1000)");
  app.add_flag("--perturb", cfg.perturb, "perturb g towards D_e f on genericity failure");
  app.add_flag("--exact", cfg.exact, "exact arithmetic where the command supports it");
  app.add_option("-o,--output", cfg.output, "output path (default stdout)");
  app.add_option("--size", cfg.size, "render: pixels per side")->check(CLI::Range(8, 4000));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  const unsigned bits = cfg.precision ? cfg.precision : default_precision_bits();
  PrecisionScope scope(bits);
  cx.out["command"] = cfg.command;
  cx.out["seed"] = cfg.seed;
  cx.out["precision"] = bits;
  if (cfg.samples > 0) cx.out["samples"] = cfg.samples;
  if (!cfg.e_arg.empty()) cx.out["e"] = cfg.e_arg;

  try {
    const std::string& c = cfg.command;
    if (c == "check-hyperbolic") cmd_check_hyperbolic(cx);
    else if (c == "check-interlacer") cmd_check_interlacer(cx);
    else if (c == "intersect") cmd_intersect(cx);
    else if (c == "dixon") cmd_dixon(cx);
    else if (c == "certify") cmd_certify(cx);
    else if (c == "rationalize") cmd_rationalize(cx);
    else if (c == "bezout") cmd_bezout(cx);
    else if (c == "sos") cmd_sos(cx);
    else if (c == "conic-search") cmd_conic_search(cx);
    else cmd_render(cx);
  } catch (const Error& ex) {
    std::cerr << "hypcurve: " << ex.what() << "\n";
    return exit_code_for(ex);
  } catch (const Json::exception& ex) {
    std::cerr << "hypcurve: bad JSON input: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "hypcurve: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "hypcurve: " << ex.what() << "\n";
    return 3;
  }

  const std::string text = cx.raw.empty() ? cx.out.dump(2) + "\n" : cx.raw;
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(cfg.output);
    if (!os) {
      std::cerr << "hypcurve: cannot write " << cfg.output << "\n";
      return 2;
    }
    os << text;
  }
  return cx.code;
}
