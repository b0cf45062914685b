#include "berkline/cli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "berkline/fredholm.hpp"
#include "berkline/picture.hpp"
#include "berkline/spectra.hpp"

namespace berkline::cli {

namespace {

struct Flags {
  int precision = kDefaultPadicDigits;
  std::int64_t degree = 4;
  std::int64_t truncation = 0;  // 0: derived from the degree
  double tol = 1e-9;
  std::int64_t primes_upto = 7;
  std::int64_t n_max = 6;
  std::int64_t terms = 200;

  std::string point;
  std::string poly;
  std::string radius;
  std::string constraints;
  std::string descriptor;
  std::string target;
  std::string polys = "t,t-1,t^2+1";
  std::string spec;
  std::string matrix;
  std::string input;
  bool svg = false;
};

Json error_doc(std::string_view code, const std::string& message) {
  return Json{{"error", {{"code", std::string(code)}, {"message", message}}}};
}

Rational parse_flag_rational(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw SchemaError(std::string(name) + ": " + e.what());
  }
}

IntPoly parse_flag_poly(const std::string& text) {
  try {
    return parse_int_poly(text);
  } catch (const Error& e) {
    throw SchemaError(std::string("poly: ") + e.what());
  }
}

Json segments_json(const NewtonPolygon& ng) {
  Json vertices = Json::array();
  for (const auto& [m, v] : ng.vertices) vertices.push_back(Json::array({m, to_string(v)}));
  Json segments = Json::array();
  for (const auto& s : ng.segments) segments.push_back({{"slope", to_string(s.slope)}, {"length", s.length}});
  return {{"vertices", vertices}, {"segments", segments}};
}

Json points_json(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const auto& x : pts) out.push_back(to_json(x));
  return out;
}

Json magnitudes_json(const std::vector<Magnitude>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

Json picture_point(const PicturePoint& pt) { return {{"label", pt.label}, {"x", pt.x}, {"y", pt.y}}; }

std::int64_t default_truncation(const Flags& f) {
  if (f.truncation > 0) return f.truncation;
  return std::min(max_truncation(), std::max(f.degree + 4, 2 * f.degree));
}

std::int64_t radius_steps(std::int64_t truncation) { return std::max<std::int64_t>(1, std::min<std::int64_t>(6, truncation / 2)); }

Point load_point(const std::string& text, const Flags& f) { return point_from_json(load_json_argument(text), f.precision); }

OperatorSpec load_operator(const Flags& f) {
  if (!f.spec.empty()) return operator_from_json(load_json_argument(f.spec));
  if (!f.matrix.empty()) return make_finite_rank(padic_matrix_from_json(load_json_argument(f.matrix)));
  throw SchemaError("one of --spec or --matrix is required");
}

Json cmd_eval(const Flags& f) {
  Point x = load_point(f.point, f);
  IntPoly poly = parse_flag_poly(f.poly);
  return {{"point", to_json(x)}, {"poly", to_string(poly)}, {"value", to_json(eval_point(x, poly))}};
}

Json cmd_classify(const Flags& f) {
  Point x = canonical(load_point(f.point, f));
  BasePoint b = base_point(x);
  return {{"kind", kind_name(x)},
          {"point", to_json(x)},
          {"field", to_string(base_field(b))},
          {"base", to_json(b)},
          {"ultrametric", is_ultrametric(x)},
          {"abs_t", to_json(abs_point(x))}};
}

Json cmd_base(const Flags& f) {
  BasePoint b = base_point(load_point(f.point, f));
  return {{"base", to_json(b)}, {"label", to_string(b)}, {"zero", to_json(to_point(b))}};
}

Json cmd_ball(const Flags& f) {
  Point x = load_point(f.point, f);
  Rational r = parse_flag_rational(f.radius, "radius");
  return {{"inside", in_ball(x, r)}, {"abs_t", to_json(abs_point(x))}, {"radius", to_string(r)}};
}

Json cmd_open_set(const Flags& f) {
  Point x = load_point(f.point, f);
  Json cj = load_json_argument(f.constraints);
  if (!cj.is_array()) throw SchemaError("constraints: expected an array");
  std::vector<OpenSetConstraint> cs;
  for (const auto& c : cj) {
    if (!c.is_object() || !c.contains("poly") || !c.contains("op") || !c.contains("bound")) {
      throw SchemaError("constraint: expected {\"poly\", \"op\", \"bound\"}");
    }
    const std::string op = c["op"].get<std::string>();
    if (op != "<" && op != ">") throw SchemaError("constraint op must be '<' or '>'");
    cs.push_back({parse_flag_poly(c["poly"].get<std::string>()), op == "<",
                  parse_flag_rational(c["bound"].is_string() ? c["bound"].get<std::string>() : c["bound"].dump(), "bound")});
  }
  return {{"inside", in_open_set(x, cs)}};
}

Json cmd_converge(const Flags& f) {
  SequenceDescriptor seq = descriptor_from_json(load_json_argument(f.descriptor));
  Point target = load_point(f.target, f);
  std::vector<IntPoly> polys;
  std::stringstream ss(f.polys);
  for (std::string item; std::getline(ss, item, ',');) polys.push_back(parse_flag_poly(item));
  if (f.terms < 1) throw SchemaError("terms must be >= 1");
  std::vector<Point> pts;
  for (std::int64_t i = 1; i <= f.terms; ++i) pts.push_back(instantiate(seq, i, f.precision));
  bool predicate = converges_to(seq, target);
  LimitReport rep = numeric_limit_check(pts, target, polys, f.tol);
  return {{"converges", predicate},
          {"numeric",
           {{"max_deviation", rep.max_deviation},
            {"worst_index", rep.worst_index},
            {"worst_poly", rep.worst_poly},
            {"tail_start", rep.tail_start},
            {"within_tolerance", rep.within_tolerance}}},
          {"agree", predicate == rep.within_tolerance}};
}

Json cmd_picture(const Flags& f, std::string& text) {
  std::vector<Rational> ups{Rational(1), Rational(3, 4), Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  std::vector<Rational> oms{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4)};
  std::vector<std::pair<std::int64_t, Rational>> th{{1, Rational(1, 2)}, {2, Rational(1, 2)}};
  Picture pic = mz_structure(f.primes_upto, ups, oms, th);
  if (f.svg) text = picture_svg(pic);
  Json real = Json::array();
  for (const auto& [u, pt] : pic.real_branch) {
    Json e = picture_point(pt);
    e["upsilon"] = to_string(u);
    real.push_back(e);
  }
  Json arcs = Json::array();
  for (const auto& a : pic.arcs) {
    Json samples = Json::array();
    for (const auto& [w, pt] : a.samples) {
      Json e = picture_point(pt);
      e["omega"] = to_string(w);
      samples.push_back(e);
    }
    arcs.push_back({{"q", a.q},
                    {"index", a.index},
                    {"radius", a.radius},
                    {"center_x", a.center_x},
                    {"samples", samples},
                    {"endpoint", picture_point(a.endpoint)}});
  }
  Json ths = Json::array();
  for (const auto& t : pic.thresholds) {
    ths.push_back({{"k", t.k}, {"epsilon", to_string(t.epsilon)}, {"p", t.p}, {"omega", t.omega}});
  }
  return {{"zero_q", picture_point(pic.zero_q)}, {"real_branch", real}, {"arcs", arcs}, {"thresholds", ths}};
}

Json cmd_norm(const Flags& f) {
  if (!f.matrix.empty()) return {{"norm", to_json(op_norm(padic_matrix_from_json(load_json_argument(f.matrix))))}};
  return {{"norm", to_json(op_norm(load_operator(f)))}};
}

Json cmd_radius(const Flags& f) {
  OperatorSpec spec = load_operator(f);
  std::int64_t n = f.truncation > 0 ? f.truncation : std::min<std::int64_t>(max_truncation(), 4 * f.n_max);
  SpectralRadius r = spectral_radius(spec, f.n_max, n);
  return {{"estimate", to_json(r.estimate)},
          {"sequence", magnitudes_json(r.sequence)},
          {"converged", r.converged},
          {"exact", r.exact},
          {"truncation", n}};
}

Json bound_json(const ZeroBound& b) {
  return {{"holds", b.holds},
          {"min_zero", b.min_zero ? to_json(*b.min_zero) : Json(nullptr)},
          {"inv_radius", b.inv_radius ? to_json(*b.inv_radius) : Json("inf")},
          {"radius", to_json(b.radius)},
          {"radius_exact", b.radius_exact}};
}

Json zeros_json(const std::vector<ZeroReport>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) {
    Json e{{"valuation", to_string(z.valuation)}, {"multiplicity", z.multiplicity}, {"note", z.note}};
    if (z.root) e["root"] = to_json(*z.root);
    if (z.residual) e["residual"] = to_json(*z.residual);
    out.push_back(e);
  }
  return out;
}

Json cmd_fredholm(const Flags& f) {
  OperatorSpec spec = load_operator(f);
  const std::int64_t n = default_truncation(f);
  CcSpectrum cc = spectrum_cc_operator(spec, f.degree, n, f.precision);
  const FredholmSeries& s = cc.series;
  Json coeffs = Json::array();
  Json detail = Json::array();
  for (std::size_t m = 0; m < s.exact.size(); ++m) {
    coeffs.push_back(to_string(s.exact[m]));
    detail.push_back({{"m", m},
                      {"value", to_string(s.exact[m])},
                      {"valuation", s.exact[m] == 0 ? Json("inf") : Json(padic_valuation(s.exact[m], s.p))},
                      {"padic", s.coeffs[m].str()},
                      {"stabilization", to_json(s.stabilization[m])},
                      {"valuation_certified", static_cast<bool>(s.valuation_certified[m])},
                      {"certified_unit_digits", s.certified_unit_digits[m]}});
  }
  NewtonPolygon ng = newton_polygon(s);
  Json zeros = Json::array();
  for (const auto& z : zero_valuations(ng, s.p)) zeros.push_back({{"magnitude", to_json(z.magnitude)}, {"count", z.count}});
  Resolvent res = fredholm_resolvent(s, spec);
  return {{"p", s.p},
          {"degree", s.degree},
          {"truncation", s.truncation},
          {"method", s.method},
          {"coeffs", coeffs},
          {"coefficients", detail},
          {"polygon", segments_json(ng)},
          {"zeros", zeros},
          {"roots", zeros_json(cc.zeros)},
          {"bound_check", bound_json(check_zero_bound(s, spec, radius_steps(n)))},
          {"resolvent_verified", res.verified}};
}

Json cmd_spectrum(const Flags& f) {
  Json in = load_json_argument(f.input);
  if (!in.is_object() || !in.contains("kind") || !in["kind"].is_string()) throw SchemaError("input: missing 'kind'");
  const std::string kind = in["kind"].get<std::string>();
  std::optional<Point> probe;
  if (!f.point.empty()) probe = load_point(f.point, f);
  if (kind == "integer") {
    if (!in.contains("m")) throw SchemaError("input: missing 'm'");
    Integer m = parse_integer(in["m"].is_string() ? in["m"].get<std::string>() : in["m"].dump());
    SpectrumDescription d = spectrum_integer(m);
    Json out{{"kind", kind}, {"points", points_json(d.points)}, {"families", d.families}};
    if (probe) out["contains"] = d.contains(*probe);
    return out;
  }
  if (kind == "complex-matrix") {
    GaussMatrix a = gauss_matrix_from_json(in.contains("rows") ? in["rows"] : in.value("matrix", Json()));
    auto pts = spectrum_complex_matrix(a);
    Json out{{"kind", kind}, {"points", points_json(pts)}};
    if (probe) {
      out["contains"] = std::any_of(pts.begin(), pts.end(), [&](const Point& y) { return points_equal(*probe, y).equal; });
    }
    return out;
  }
  if (kind == "operator-spec") {
    if (!in.contains("spec")) throw SchemaError("input: missing 'spec'");
    OperatorSpec spec = operator_from_json(in["spec"]);
    const std::int64_t n = default_truncation(f);
    CcSpectrum cc = spectrum_cc_operator(spec, f.degree, n, f.precision);
    Json mags = Json::array();
    bool within = true;
    for (const auto& m : cc.spectrum.magnitude_only) {
      mags.push_back({{"magnitude", to_json(m.magnitude)}, {"count", m.count}, {"note", m.note}});
      within = within && mag_le(m.magnitude, cc.radius.estimate);
    }
    for (const auto& x : cc.spectrum.points) within = within && mag_le(abs_point(x), cc.radius.estimate);
    Json out{{"kind", kind},
             {"points", points_json(cc.spectrum.points)},
             {"magnitude_only", mags},
             {"families", cc.spectrum.families},
             {"radius", to_json(cc.radius.estimate)},
             {"radius_exact", cc.radius.exact},
             {"within_radius", within}};
    if (probe) out["contains"] = cc.spectrum.contains(*probe);
    return out;
  }
  throw SchemaError("input kind must be integer, complex-matrix or operator-spec");
}

Json cmd_crosscheck(const Flags& f) {
  if (f.matrix.empty()) throw SchemaError("--matrix is required");
  Crosscheck c = crosscheck_finite_rank(padic_matrix_from_json(load_json_argument(f.matrix)));
  return {{"agree", c.agree}, {"from_fredholm", magnitudes_json(c.from_fredholm)}, {"from_charpoly", magnitudes_json(c.from_charpoly)}};
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  Flags f;
  CLI::App app{"Seminorms on the Berkovich affine line over Z and spectra of operators", "berkline"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--precision", f.precision, "p-adic digits")->check(CLI::Range(1, 4096));
  app.add_option("--degree", f.degree, "Fredholm degree D")->check(CLI::Range(0, 64));
  app.add_option("--truncation", f.truncation, "truncation size N")->check(CLI::Range(1, 4096));
  app.add_option("--tol", f.tol, "archimedean tolerance")->check(CLI::PositiveNumber);
  app.add_option("--primes-upto", f.primes_upto, "largest prime in the picture")->check(CLI::Range(2, 1000));

  std::map<std::string, std::function<Json()>> handlers;
  std::string text;
  auto sub = [&](const char* name, const char* help, std::function<Json()> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };

  auto* eval = sub("eval", "evaluate lambda_x(poly)", [&] { return cmd_eval(f); });
  eval->add_option("--point", f.point)->required();
  eval->add_option("--poly", f.poly)->required();
  sub("classify", "kind, base field and |t| of a point", [&] { return cmd_classify(f); })
      ->add_option("--point", f.point)
      ->required();
  sub("base", "image of a point in the spectrum of Z", [&] { return cmd_base(f); })->add_option("--point", f.point)->required();
  auto* ball = sub("ball", "test lambda(t) <= radius", [&] { return cmd_ball(f); });
  ball->add_option("--point", f.point)->required();
  ball->add_option("--radius", f.radius)->required();
  auto* open = sub("open-set", "test membership in a basic open set", [&] { return cmd_open_set(f); });
  open->add_option("--point", f.point)->required();
  open->add_option("--constraints", f.constraints)->required();
  auto* conv = sub("converge", "decide convergence of a point sequence", [&] { return cmd_converge(f); });
  conv->add_option("--descriptor", f.descriptor)->required();
  conv->add_option("--target", f.target)->required();
  conv->add_option("--polys", f.polys, "comma-separated test polynomials");
  conv->add_option("--terms", f.terms);
  sub("mz-picture", "layout of the zeros of the minimal fields", [&] { return cmd_picture(f, text); })
      ->add_flag("--svg", f.svg);
  auto* norm = sub("norm", "operator norm", [&] { return cmd_norm(f); });
  norm->add_option("--spec", f.spec);
  norm->add_option("--matrix", f.matrix);
  auto* rad = sub("radius", "spectral radius", [&] { return cmd_radius(f); });
  rad->add_option("--spec", f.spec);
  rad->add_option("--matrix", f.matrix);
  rad->add_option("--n-max", f.n_max)->check(CLI::Range(1, 64));
  auto* fred = sub("fredholm", "Fredholm determinant, Newton polygon and zeros", [&] { return cmd_fredholm(f); });
  fred->add_option("--spec", f.spec);
  fred->add_option("--matrix", f.matrix);
  auto* spec = sub("spectrum", "spectrum of an integer, complex matrix or operator", [&] { return cmd_spectrum(f); });
  spec->add_option("--input", f.input)->required();
  spec->add_option("--point", f.point, "membership probe");
  sub("crosscheck", "compare two computations of a finite-rank spectrum", [&] { return cmd_crosscheck(f); })
      ->add_option("--matrix", f.matrix)
      ->required();

  Outcome out;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out.text = app.help();
    return out;
  } catch (const CLI::CallForAllHelp&) {
    out.text = app.help("", CLI::AppFormatMode::All);
    return out;
  } catch (const CLI::ParseError& e) {
    out.document = error_doc("SchemaError", e.what());
    out.exit_code = 1;
    return out;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    out.document = handlers.at(name)();
    out.text = text;
  } catch (const SchemaError& e) {
    out.document = error_doc("SchemaError", e.what());
    out.exit_code = 1;
  } catch (const Json::exception& e) {
    out.document = error_doc("SchemaError", e.what());
    out.exit_code = 1;
  } catch (const Error& e) {
    out.document = error_doc(error_code_name(e.code()), e.what());
    out.exit_code = is_precision_error(e.code()) ? 3 : 2;
  }
  return out;
}

}  // namespace berkline::cli
