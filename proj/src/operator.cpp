#include "berkline/operator.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "berkline/newton.hpp"

namespace berkline {

namespace {

constexpr std::int64_t kScanCap = 4096;

std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

[[noreturn]] void bad_formula(const std::string& text, const std::string& why) {
  fail(ErrorCode::InvalidArgument, "entry formula '" + text + "': " + why);
}

// a*i + b
struct Linear {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

Linear parse_linear(const std::string& s, const std::string& whole) {
  Linear out;
  std::size_t k = 0;
  if (s.empty()) bad_formula(whole, "empty index expression");
  while (k < s.size()) {
    int sign = 1;
    if (s[k] == '+' || s[k] == '-') {
      sign = s[k] == '-' ? -1 : 1;
      ++k;
    }
    std::size_t start = k;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    std::int64_t coef = 1;
    bool have = k > start;
    if (have) coef = std::stoll(s.substr(start, k - start));
    if (k < s.size() && s[k] == '*') ++k;
    if (k < s.size() && s[k] == 'i') {
      ++k;
      out.a += sign * coef;
    } else {
      if (!have) bad_formula(whole, "cannot read index expression '" + s + "'");
      out.b += sign * coef;
    }
    if (k < s.size() && s[k] != '+' && s[k] != '-') bad_formula(whole, "cannot read index expression '" + s + "'");
  }
  return out;
}

struct Clause {
  Rational constant = 1;
  Linear p_exponent;  // p^(a i + b)
  std::int64_t row_shift = 0;
  std::int64_t col_shift = 0;
};

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

Clause parse_clause(const std::string& raw) {
  std::string text = strip(raw);
  auto at = text.find("at(");
  if (at == std::string::npos) bad_formula(raw, "missing 'at (row, col)'");
  std::string expr = text.substr(0, at);
  std::string pos = text.substr(at + 3);
  if (pos.empty() || pos.back() != ')') bad_formula(raw, "unterminated position");
  pos.pop_back();
  auto comma = pos.find(',');
  if (comma == std::string::npos) bad_formula(raw, "position needs row and column");
  Linear row = parse_linear(pos.substr(0, comma), raw);
  Linear col = parse_linear(pos.substr(comma + 1), raw);
  if (row.a != 1 || col.a != 1) bad_formula(raw, "positions must have the form (i+r, i+c)");
  Clause c;
  c.row_shift = row.b;
  c.col_shift = col.b;
  if (expr.empty()) bad_formula(raw, "missing entry expression");
  for (std::string factor : split_top_level(expr, '*')) {
    if (factor.empty()) bad_formula(raw, "empty factor");
    bool negate = false;
    if (factor[0] == '-' && factor.size() > 1 && factor[1] == 'p') {
      negate = true;
      factor.erase(0, 1);
    }
    if (factor[0] == 'p') {
      Linear e{0, 1};
      if (factor.size() > 1) {
        if (factor[1] != '^') bad_formula(raw, "expected p^exponent");
        std::string ex = factor.substr(2);
        if (!ex.empty() && ex.front() == '(') {
          if (ex.back() != ')') bad_formula(raw, "unbalanced parentheses");
          ex = ex.substr(1, ex.size() - 2);
        }
        e = parse_linear(ex, raw);
      }
      c.p_exponent.a += e.a;
      c.p_exponent.b += e.b;
    } else {
      c.constant *= parse_rational(factor);
    }
    if (negate) c.constant = -c.constant;
  }
  return c;
}

std::int64_t min_valuation(const RatMatrix& m, std::int64_t p, bool& any) {
  any = false;
  std::int64_t v = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) {
        any = true;
        v = std::min(v, padic_valuation(m(i, j), p));
      }
  return v;
}

Magnitude norm_from(std::int64_t p, bool any, std::int64_t v) {
  return any ? Magnitude::exp(Rational(p), Rational(-v)) : Magnitude::zero();
}

std::int64_t band_width(const OperatorSpec& spec) {
  if (spec.kind == OperatorSpec::Kind::Diagonal) return 0;
  if (spec.kind == OperatorSpec::Kind::Banded) return spec.width;
  return kScanCap;
}

ExtRational sum(const ExtRational& a, const ExtRational& b) { return a + b; }

}  // namespace

PadicNumber PadicMatrix::entry(std::size_t i, std::size_t j, int digits) const {
  return PadicNumber::from_rational(p, m(i, j), digits);
}

ExtRational DecayCertificate::at(std::int64_t n) const {
  switch (form) {
    case Form::Affine: return ExtRational(Rational(a * n + b));
    case Form::Quadratic: return ExtRational(Rational(a * n * n + b * n + c));
    case Form::FiniteSupport: return n <= support ? ExtRational(floor) : ExtRational::infinity();
    case Form::Zero: return ExtRational::infinity();
  }
  return ExtRational::infinity();
}

void DecayCertificate::validate() const {
  switch (form) {
    case Form::Affine:
      if (a <= 0) fail(ErrorCode::InvalidArgument, "affine decay certificate needs a > 0");
      break;
    case Form::Quadratic:
      if (a <= 0 || 3 * a + b < 0) fail(ErrorCode::InvalidArgument, "quadratic decay certificate must increase on n >= 1");
      break;
    case Form::FiniteSupport:
      if (support < 1) fail(ErrorCode::InvalidArgument, "finite support must be >= 1");
      break;
    case Form::Zero: break;
  }
}

bool OperatorSpec::strictly_triangular() const {
  if (decay.form == DecayCertificate::Form::Zero) return true;
  if (!offsets || offsets->empty()) return offsets.has_value();
  bool all_pos = std::all_of(offsets->begin(), offsets->end(), [](std::int64_t d) { return d > 0; });
  bool all_neg = std::all_of(offsets->begin(), offsets->end(), [](std::int64_t d) { return d < 0; });
  return all_pos || all_neg;
}

bool OperatorSpec::triangular() const {
  if (kind == Kind::Diagonal) return true;
  if (!offsets) return false;
  bool all_nonneg = std::all_of(offsets->begin(), offsets->end(), [](std::int64_t d) { return d >= 0; });
  bool all_nonpos = std::all_of(offsets->begin(), offsets->end(), [](std::int64_t d) { return d <= 0; });
  return all_nonneg || all_nonpos;
}

std::string to_string(OperatorSpec::Kind k) {
  switch (k) {
    case OperatorSpec::Kind::Diagonal: return "diagonal";
    case OperatorSpec::Kind::Banded: return "banded";
    case OperatorSpec::Kind::General: return "general";
  }
  return "?";
}

OperatorSpec make_operator(std::int64_t p, const std::string& entries, const DecayCertificate& decay,
                           std::optional<OperatorSpec::Kind> kind, std::optional<std::int64_t> width) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  decay.validate();
  std::vector<Clause> clauses;
  for (const auto& part : split_top_level(entries, ';')) {
    if (strip(part).empty() || strip(part) == "0") continue;
    clauses.push_back(parse_clause(part));
  }
  std::set<std::int64_t> offs;
  for (const auto& c : clauses) offs.insert(c.col_shift - c.row_shift);
  std::int64_t max_off = 0;
  for (auto d : offs) max_off = std::max(max_off, d < 0 ? -d : d);

  OperatorSpec spec;
  spec.p = p;
  spec.decay = decay;
  spec.description = entries;
  spec.offsets = std::vector<std::int64_t>(offs.begin(), offs.end());
  if (!kind) kind = (offs.empty() || (offs.size() == 1 && *offs.begin() == 0)) ? OperatorSpec::Kind::Diagonal
                                                                               : OperatorSpec::Kind::Banded;
  spec.kind = *kind;
  switch (spec.kind) {
    case OperatorSpec::Kind::Diagonal:
      if (max_off != 0) fail(ErrorCode::InvalidArgument, "diagonal operator with off-diagonal entries");
      break;
    case OperatorSpec::Kind::Banded:
      spec.width = width.value_or(max_off);
      if (spec.width < max_off) fail(ErrorCode::InvalidArgument, "entries lie outside the declared band");
      break;
    case OperatorSpec::Kind::General:
      if (decay.form != DecayCertificate::Form::FiniteSupport && decay.form != DecayCertificate::Form::Zero) {
        fail(ErrorCode::InvalidArgument, "general operators need a finite-support certificate");
      }
      break;
  }
  spec.entry = [clauses, p](std::int64_t r, std::int64_t c) {
    Rational v = 0;
    for (const auto& cl : clauses) {
      std::int64_t i = r - cl.row_shift;
      if (i < 1 || c - cl.col_shift != i) continue;
      v += cl.constant * rpow(Rational(p), cl.p_exponent.a * i + cl.p_exponent.b);
    }
    return v;
  };
  return spec;
}

OperatorSpec make_finite_rank(const PadicMatrix& a) {
  if (!a.m.square() || a.m.rows() == 0) fail(ErrorCode::InvalidArgument, "finite-rank block must be square and nonempty");
  const auto k = static_cast<std::int64_t>(a.m.rows());
  OperatorSpec spec;
  spec.p = a.p;
  spec.kind = OperatorSpec::Kind::General;
  spec.width = k - 1;
  std::set<std::int64_t> offs;
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = 0; j < k; ++j)
      if (a.m(i, j) != 0) offs.insert(j - i);
  spec.offsets = std::vector<std::int64_t>(offs.begin(), offs.end());
  bool any = false;
  std::int64_t v = min_valuation(a.m, a.p, any);
  if (any) {
    spec.decay.form = DecayCertificate::Form::FiniteSupport;
    spec.decay.support = k;
    spec.decay.floor = v;
  } else {
    spec.decay.form = DecayCertificate::Form::Zero;
  }
  RatMatrix block = a.m;
  spec.entry = [block, k](std::int64_t i, std::int64_t j) {
    if (i < 1 || j < 1 || i > k || j > k) return Rational(0);
    return block(i - 1, j - 1);
  };
  spec.description = "finite rank " + std::to_string(k) + "x" + std::to_string(k);
  return spec;
}

void spot_check(const OperatorSpec& spec, std::int64_t horizon) {
  spec.decay.validate();
  const std::int64_t w = band_width(spec);
  for (std::int64_t i = 1; i <= horizon; ++i) {
    for (std::int64_t j = 1; j <= horizon; ++j) {
      Rational v = spec.entry(i, j);
      if (v == 0) continue;
      auto where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      std::int64_t d = j - i;
      if ((d < 0 ? -d : d) > w) fail(ErrorCode::InvalidArgument, "entry " + where + " lies outside the band");
      if (spec.offsets && std::find(spec.offsets->begin(), spec.offsets->end(), d) == spec.offsets->end()) {
        fail(ErrorCode::InvalidArgument, "entry " + where + " lies off the declared diagonals");
      }
      ExtRational g = spec.decay.at(std::min(i, j));
      if (g.is_infinite() || Rational(padic_valuation(v, spec.p)) < g.value()) {
        fail(ErrorCode::InvalidArgument, "entry " + where + " violates the decay certificate");
      }
    }
  }
}

Magnitude op_norm(const PadicMatrix& m) {
  bool any = false;
  std::int64_t v = min_valuation(m.m, m.p, any);
  return norm_from(m.p, any, v);
}

Magnitude op_norm(const OperatorSpec& spec) {
  const auto& d = spec.decay;
  if (d.form == DecayCertificate::Form::Zero) return Magnitude::zero();
  const std::int64_t w = band_width(spec);
  bool any = false;
  std::int64_t vmin = std::numeric_limits<std::int64_t>::max();
  std::int64_t limit = d.form == DecayCertificate::Form::FiniteSupport ? d.support : kScanCap;
  for (std::int64_t i = 1; i <= limit; ++i) {
    // every entry in rows/columns >= i has min index >= i - w
    if (any && d.form != DecayCertificate::Form::FiniteSupport) {
      ExtRational g = d.at(std::max<std::int64_t>(1, i - w));
      if (g > ExtRational(Rational(vmin))) return norm_from(spec.p, any, vmin);
    }
    std::int64_t lo = std::max<std::int64_t>(1, i - w);
    std::int64_t hi = d.form == DecayCertificate::Form::FiniteSupport ? d.support : i + w;
    for (std::int64_t j = lo; j <= hi; ++j) {
      for (auto [r, c] : {std::pair{i, j}, std::pair{j, i}}) {
        Rational v = spec.entry(r, c);
        if (v == 0) continue;
        any = true;
        vmin = std::min(vmin, padic_valuation(v, spec.p));
      }
    }
  }
  if (d.form == DecayCertificate::Form::FiniteSupport) return norm_from(spec.p, any, vmin);
  fail(ErrorCode::IndeterminateValuation, "operator norm not attained within the scan window");
}

PadicMatrix mat_pow(const PadicMatrix& m, std::uint64_t n) { return {m.p, mat_power(m.m, n)}; }

NeumannResult neumann_inverse(const PadicMatrix& x, std::size_t max_terms, int digits) {
  if (!x.m.square()) fail(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
  const std::size_t n = x.m.rows();
  RatMatrix y = RatMatrix::identity(n) - x.m;
  bool any = false;
  std::int64_t vy = min_valuation(y, x.p, any);
  if (any && vy < 1) {
    fail(ErrorCode::NotContractive, "||1 - x|| = " + std::to_string(x.p) + "^" + std::to_string(-vy) + " is not < 1");
  }
  NeumannResult res;
  RatMatrix sum = RatMatrix::identity(n);
  RatMatrix term = RatMatrix::identity(n);
  res.terms = 1;
  for (std::size_t k = 1; k <= max_terms; ++k) {
    term = term * y;
    bool nonzero = false;
    std::int64_t vt = min_valuation(term, x.p, nonzero);
    if (!nonzero) {
      res.exact = true;
      res.certified_to = std::numeric_limits<std::int64_t>::max();
      res.inverse = {x.p, sum};
      return res;
    }
    if (vt >= digits) {
      res.certified_to = vt;
      res.inverse = {x.p, sum};
      return res;
    }
    sum = sum + term;
    ++res.terms;
  }
  bool nonzero = false;
  res.certified_to = min_valuation(term * y, x.p, nonzero);
  res.inverse = {x.p, sum};
  return res;
}

Truncation truncate(const OperatorSpec& spec, std::int64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "truncation size must be >= 1");
  RatMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j = 1; j <= n; ++j) m(i - 1, j - 1) = spec.entry(i, j);
  Truncation t;
  t.matrix = {spec.p, m};
  const DecayCertificate decay = spec.decay;
  const bool nilpotent = spec.strictly_triangular();
  const bool triangular = spec.triangular();
  const std::int64_t w = spec.kind == OperatorSpec::Kind::Banded ? spec.width : 0;
  t.coeff_error_bound = [decay, nilpotent, triangular, w, n](std::int64_t deg) -> ExtRational {
    if (deg <= 0 || nilpotent || decay.form == DecayCertificate::Form::Zero) return ExtRational::infinity();
    if (decay.form == DecayCertificate::Form::FiniteSupport) {
      if (n >= decay.support) return ExtRational::infinity();
      return ExtRational(Rational(decay.floor * deg));
    }
    // the cheapest index set of size deg that reaches past n: {1..deg-1} plus n+1
    const std::int64_t shift = triangular ? 0 : w;
    ExtRational total(Rational(0));
    for (std::int64_t k = 1; k < deg; ++k) total = sum(total, decay.at(std::max<std::int64_t>(1, k - shift)));
    return sum(total, decay.at(std::max<std::int64_t>(1, n + 1 - shift)));
  };
  return t;
}

SpectralRadius spectral_radius(const OperatorSpec& spec, std::int64_t n_max, std::int64_t truncation) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
  spec.decay.validate();
  Truncation tr = truncate(spec, truncation);
  const auto& decay = spec.decay;
  const std::int64_t w = spec.kind == OperatorSpec::Kind::Banded ? spec.width
                         : spec.kind == OperatorSpec::Kind::Diagonal ? 0
                                                                     : kScanCap;
  SpectralRadius out;
  RatMatrix power = RatMatrix::identity(tr.matrix.size());
  for (std::int64_t n = 1; n <= n_max; ++n) {
    power = power * tr.matrix.m;
    bool any = false;
    std::int64_t v = min_valuation(power, spec.p, any);
    // entries of u^n missing from u_N^n come from paths that reach past N; all
    // their indices are >= N + 1 - n w, so each has valuation >= n g(N + 1 - n w)
    ExtRational bound;
    if (decay.form == DecayCertificate::Form::Zero ||
        (decay.form == DecayCertificate::Form::FiniteSupport && truncation >= decay.support)) {
      bound = ExtRational::infinity();
    } else if (decay.form == DecayCertificate::Form::FiniteSupport) {
      bound = ExtRational(Rational(decay.floor * n));
    } else {
      std::int64_t idx = std::max<std::int64_t>(1, truncation + 1 - n * std::min<std::int64_t>(w, kScanCap));
      bound = ExtRational(Rational(decay.at(idx).value() * n));
    }
    ExtRational observed = any ? ExtRational(Rational(v)) : ExtRational::infinity();
    if (!(bound > observed) && !(bound.is_infinite() && observed.is_infinite())) {
      fail(ErrorCode::TruncationInsufficient, "truncation " + std::to_string(truncation) +
                                                  " does not determine ||u^" + std::to_string(n) + "||");
    }
    Magnitude norm = any ? Magnitude::exp(Rational(spec.p), Rational(-v)) : Magnitude::zero();
    out.sequence.push_back(any ? mag_pow(norm, Rational(1, n)) : Magnitude::zero());
  }

  // closed-form limits
  if (spec.strictly_triangular()) {
    out.estimate = Magnitude::zero();
    out.exact = true;
  } else if (decay.form == DecayCertificate::Form::FiniteSupport) {
    Truncation block = truncate(spec, decay.support);
    auto cp = charpoly_berkowitz(block.matrix.m);
    std::vector<ExtRational> vals;
    for (const auto& c : cp) vals.push_back(c == 0 ? ExtRational::infinity() : ExtRational(padic_valuation(c, spec.p)));
    auto mags = nonzero_root_magnitudes(vals, spec.p);
    out.estimate = Magnitude::zero();
    for (const auto& m : mags) out.estimate = mag_max(out.estimate, m);
    out.exact = true;
  } else if (spec.triangular()) {
    // spectrum is {0} together with the diagonal entries
    bool any = false;
    std::int64_t vmin = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t i = 1; i <= kScanCap; ++i) {
      if (any && decay.at(i) > ExtRational(Rational(vmin))) {
        out.estimate = Magnitude::exp(Rational(spec.p), Rational(-vmin));
        out.exact = true;
        break;
      }
      Rational d = spec.entry(i, i);
      if (d != 0) {
        any = true;
        vmin = std::min(vmin, padic_valuation(d, spec.p));
      }
    }
  }
  if (out.exact) {
    out.converged = true;
    return out;
  }
  const auto& s = out.sequence;
  out.estimate = s.back();
  if (s.size() >= 3 && s[s.size() - 1] == s[s.size() - 2] && s[s.size() - 2] == s[s.size() - 3]) out.converged = true;
  return out;
}

}  // namespace berkline
