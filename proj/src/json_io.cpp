#include "berkline/json_io.hpp"

#include <fstream>
#include <sstream>

#include "overloaded.hpp"

namespace berkline {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError(msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

Rational rational_of(const Json& j, const char* what) {
  try {
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    schema(std::string(what) + ": " + e.what());
  }
  schema(std::string(what) + ": expected a rational (integer or string such as \"2/3\")");
}

std::int64_t int_of(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    try {
      return to_int64(parse_integer(j.get<std::string>()));
    } catch (const std::exception& e) {
      schema(std::string(what) + ": " + e.what());
    }
  }
  schema(std::string(what) + ": expected an integer");
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

Rational rational_field(const Json& j, const char* key) { return rational_of(field(j, key), key); }

PadicNumber padic_from_json(std::int64_t p, const Json& j, int digits) {
  if (j.is_object()) {
    if (j.contains("indeterminate")) return PadicNumber::indeterminate(p, int_of(j["indeterminate"], "indeterminate"));
    std::int64_t v = int_of(field(j, "valuation"), "valuation");
    Integer unit;
    try {
      unit = parse_integer(string_of(field(j, "unit"), "unit"));
    } catch (const Error& e) {
      schema(std::string("unit: ") + e.what());
    }
    auto n = static_cast<int>(int_of(field(j, "digits"), "digits"));
    return PadicNumber::from_unit(p, v, unit, n);
  }
  return PadicNumber::from_rational(p, rational_of(j, "s"), digits);
}

}  // namespace

Json to_json(const Magnitude& m) {
  switch (m.kind()) {
    case Magnitude::Kind::Zero: return Json{{"zero", true}};
    case Magnitude::Kind::Exp:
      return Json{{"base", m.euler_base() ? std::string("e") : to_string(m.base())}, {"exp", to_string(m.exponent())}};
    case Magnitude::Kind::Approx:
      return Json{{"approx", m.to_double()}, {"mantissa", m.mantissa()}, {"exp2", m.exp2()}};
  }
  return Json();
}

Magnitude magnitude_from_json(const Json& j) {
  if (!j.is_object()) schema("magnitude: expected an object");
  if (j.contains("zero")) return Magnitude::zero();
  if (j.contains("approx")) {
    if (j.contains("mantissa")) return Magnitude::approx(field(j, "mantissa").get<double>(), int_of(field(j, "exp2"), "exp2"));
    if (!j["approx"].is_number()) schema("approx: expected a number");
    return Magnitude::approx(j["approx"].get<double>());
  }
  const Json& b = field(j, "base");
  Rational e = rational_field(j, "exp");
  if (b.is_string() && b.get<std::string>() == "e") return Magnitude::euler(e);
  return Magnitude::exp(rational_of(b, "base"), e);
}

Json to_json(const PadicNumber& x) {
  if (x.is_zero()) return "0";
  if (x.exact()) return to_string(*x.exact());
  if (x.is_indeterminate()) return Json{{"indeterminate", x.absolute_precision()}};
  return Json{{"valuation", x.valuation()}, {"unit", to_string(x.unit())}, {"digits", x.digits()}};
}

Json to_json(const Point& x) {
  Json j = std::visit(
      detail::overloaded{
          [](const TrivialRational& v) { return Json{{"r", to_string(v.r)}}; },
          [](const TrivialAlgebraic& v) { return Json{{"minpoly", to_string(v.minpoly)}}; },
          [](const GenericTrivial&) { return Json::object(); },
          [](const TrivialFinite& v) { return Json{{"p", v.p}, {"residue", to_string(v.residue)}}; },
          [](const RealPower& v) { return Json{{"upsilon", to_string(v.upsilon)}, {"t", to_string(v.t)}}; },
          [](const ComplexFold& v) {
            return Json{{"upsilon", to_string(v.upsilon)}, {"re", to_string(v.z.re)}, {"im", to_string(v.z.im)}};
          },
          [](const PadicPower& v) { return Json{{"p", v.p}, {"omega", to_string(v.omega)}, {"s", to_json(v.s)}}; },
      },
      x);
  j["kind"] = kind_name(x);
  return j;
}

Point point_from_json(const Json& j, int digits) {
  const std::string kind = string_of(field(j, "kind"), "kind");
  if (kind == "trivial-rational") return make_trivial_rational(rational_field(j, "r"));
  if (kind == "trivial-algebraic") {
    IntPoly f;
    try {
      f = parse_int_poly(string_of(field(j, "minpoly"), "minpoly"));
    } catch (const Error& e) {
      schema(std::string("minpoly: ") + e.what());
    }
    return make_trivial_algebraic(f);
  }
  if (kind == "generic-trivial") return GenericTrivial{};
  if (kind == "trivial-finite") {
    return make_trivial_finite(int_of(field(j, "p"), "p"), rational_field(j, "residue").get_num());
  }
  if (kind == "real-power") return make_real_power(rational_field(j, "upsilon"), rational_field(j, "t"));
  if (kind == "complex-fold") {
    Rational im = j.contains("im") ? rational_field(j, "im") : Rational(0);
    return make_complex_fold(rational_field(j, "upsilon"), GaussianRational(rational_field(j, "re"), im));
  }
  if (kind == "padic-power") {
    std::int64_t p = int_of(field(j, "p"), "p");
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    return make_padic_power(p, rational_field(j, "omega"), padic_from_json(p, field(j, "s"), digits));
  }
  schema("unknown point kind '" + kind + "'");
}

Json to_json(const BasePoint& b) {
  return std::visit(detail::overloaded{
                        [](const ZeroQ&) { return Json{{"field", "Q0"}}; },
                        [](const ZeroR& z) { return Json{{"field", "R"}, {"upsilon", to_string(z.upsilon)}}; },
                        [](const ZeroP& z) { return Json{{"field", "Qp"}, {"p", z.p}, {"omega", to_string(z.omega)}}; },
                        [](const ZeroPInf& z) { return Json{{"field", "Fp"}, {"p", z.p}}; },
                    },
                    b);
}

Json to_json(const ExtRational& v) {
  if (v.is_infinite()) return "inf";
  return to_string(v.value());
}

SequenceDescriptor descriptor_from_json(const Json& j) {
  SequenceDescriptor d;
  const std::string fam = string_of(field(j, "family"), "family");
  if (fam == "real") {
    d.family = SequenceDescriptor::Family::Real;
  } else if (fam == "padic") {
    d.family = SequenceDescriptor::Family::Padic;
  } else if (fam == "finite") {
    d.family = SequenceDescriptor::Family::Finite;
  } else {
    schema("family must be real, padic or finite");
  }

  if (j.contains("prime")) {
    const Json& pr = j["prime"];
    if (pr.is_string() && pr.get<std::string>() == "enumerate") {
      d.prime.enumerate = true;
    } else if (pr.is_object()) {
      d.prime.q = int_of(field(pr, "constant"), "prime.constant");
    } else {
      d.prime.q = int_of(pr, "prime");
    }
  } else if (d.family != SequenceDescriptor::Family::Real) {
    schema("missing key 'prime'");
  }

  if (j.contains("exponent")) {
    const Json& ex = j["exponent"];
    const std::string form = string_of(field(ex, "form"), "exponent.form");
    if (form == "constant") {
      d.exponent.form = GrowthTerm::Form::Constant;
    } else if (form == "over-index") {
      d.exponent.form = GrowthTerm::Form::OverIndex;
    } else if (form == "times-index") {
      d.exponent.form = GrowthTerm::Form::TimesIndex;
    } else if (form == "geometric") {
      d.exponent.form = GrowthTerm::Form::Geometric;
      d.exponent.q = rational_field(ex, "q");
    } else {
      schema("exponent.form must be constant, over-index, times-index or geometric");
    }
    if (ex.contains("c")) d.exponent.c = rational_field(ex, "c");
  }

  const Json& el = field(j, "element");
  if (el.contains("constant")) d.element.constant = rational_field(el, "constant");
  if (el.contains("tail")) {
    const Json& t = el["tail"];
    ElementTail tail;
    if (t.contains("c")) tail.c = rational_field(t, "c");
    const Json& b = field(t, "base");
    if (b.is_string() && b.get<std::string>() == "p") {
      tail.field_prime = true;
    } else {
      tail.base = rational_of(b, "tail.base").get_num();
    }
    if (t.contains("slope")) tail.slope = int_of(t["slope"], "tail.slope");
    if (t.contains("offset")) tail.offset = int_of(t["offset"], "tail.offset");
    d.element.tail = tail;
  }
  if (el.contains("prefix")) {
    if (!el["prefix"].is_array()) schema("element.prefix: expected an array");
    for (const auto& v : el["prefix"]) d.element.prefix.push_back(rational_of(v, "element.prefix"));
  }
  return d;
}

PadicMatrix padic_matrix_from_json(const Json& j) {
  PadicMatrix m;
  m.p = int_of(field(j, "p"), "p");
  const Json& rows = j.contains("matrix") ? j["matrix"] : field(j, "rows");
  if (!rows.is_array() || rows.empty()) schema("matrix: expected a nonempty array of rows");
  const std::size_t n = rows.size();
  m.m = RatMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) schema("matrix: expected a square array");
    for (std::size_t k = 0; k < n; ++k) m.m(i, k) = rational_of(rows[i][k], "matrix entry");
  }
  if (!is_prime(m.p)) fail(ErrorCode::InvalidArgument, std::to_string(m.p) + " is not prime");
  return m;
}

OperatorSpec operator_from_json(const Json& j) {
  if (j.contains("matrix")) return make_finite_rank(padic_matrix_from_json(j));
  std::int64_t p = int_of(field(j, "p"), "p");
  const std::string entries = string_of(field(j, "entries"), "entries");

  DecayCertificate d;
  const Json& dj = field(j, "decay");
  const std::string form = string_of(field(dj, "form"), "decay.form");
  if (form == "affine") {
    d.form = DecayCertificate::Form::Affine;
    d.a = rational_field(dj, "a");
    d.b = dj.contains("b") ? rational_field(dj, "b") : Rational(0);
  } else if (form == "quadratic") {
    d.form = DecayCertificate::Form::Quadratic;
    d.a = rational_field(dj, "a");
    d.b = dj.contains("b") ? rational_field(dj, "b") : Rational(0);
    d.c = dj.contains("c") ? rational_field(dj, "c") : Rational(0);
  } else if (form == "finite-support") {
    d.form = DecayCertificate::Form::FiniteSupport;
    d.support = int_of(field(dj, "support"), "decay.support");
    d.floor = rational_field(dj, "floor");
  } else if (form == "zero") {
    d.form = DecayCertificate::Form::Zero;
  } else {
    schema("decay.form must be affine, quadratic, finite-support or zero");
  }

  std::optional<OperatorSpec::Kind> kind;
  if (j.contains("kind")) {
    const std::string k = string_of(j["kind"], "kind");
    if (k == "diagonal") {
      kind = OperatorSpec::Kind::Diagonal;
    } else if (k == "banded") {
      kind = OperatorSpec::Kind::Banded;
    } else if (k == "general") {
      kind = OperatorSpec::Kind::General;
    } else {
      schema("kind must be diagonal, banded or general");
    }
  }
  std::optional<std::int64_t> width;
  if (j.contains("width")) width = int_of(j["width"], "width");
  OperatorSpec spec;
  try {
    spec = make_operator(p, entries, d, kind, width);
  } catch (const Error& e) {
    if (std::string(e.what()).find("entry formula") != std::string::npos) schema(e.what());
    throw;
  }
  spot_check(spec);
  return spec;
}

GaussMatrix gauss_matrix_from_json(const Json& j) {
  const Json& rows = j.is_array() ? j : field(j, "rows");
  if (!rows.is_array() || rows.empty()) schema("matrix: expected a nonempty array of rows");
  const std::size_t n = rows.size();
  GaussMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) schema("matrix: expected a square array");
    for (std::size_t k = 0; k < n; ++k) {
      const Json& e = rows[i][k];
      if (e.is_object()) {
        Rational re = e.contains("re") ? rational_field(e, "re") : Rational(0);
        Rational im = e.contains("im") ? rational_field(e, "im") : Rational(0);
        m(i, k) = GaussianRational(re, im);
      } else {
        m(i, k) = GaussianRational(rational_of(e, "matrix entry"));
      }
    }
  }
  return m;
}

Json load_json_argument(const std::string& text) {
  std::string body = text;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) schema("empty JSON argument");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) schema("cannot open '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace berkline
