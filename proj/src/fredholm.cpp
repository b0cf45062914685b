#include "berkline/fredholm.hpp"

#include <cstdlib>
#include <limits>

namespace berkline {

namespace {

ExtRational valuation_of(const Rational& q, std::int64_t p) {
  return q == 0 ? ExtRational::infinity() : ExtRational(Rational(padic_valuation(q, p)));
}

bool all_zero_row(const RatMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a(i, j) != 0) return false;
  return true;
}

bool all_zero_col(const RatMatrix& a, std::size_t j) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a(i, j) != 0) return false;
  return true;
}

std::vector<Rational> diagonal_product(const RatMatrix& a, std::int64_t degree) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c[0] = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Rational& d = a(i, i);
    if (d == 0) continue;
    for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= d * c[k - 1];
  }
  return c;
}

// c_m = (-1)^m * sum of principal m x m minors
std::vector<Rational> principal_minor_sums(const RatMatrix& a, std::int64_t degree) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!all_zero_row(a, i) && !all_zero_col(a, i)) active.push_back(i);
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c[0] = 1;
  for (std::int64_t m = 1; m <= degree; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    if (mm > active.size()) break;
    std::vector<std::size_t> pick(mm);
    for (std::size_t k = 0; k < mm; ++k) pick[k] = k;
    Rational total = 0;
    std::vector<std::size_t> idx(mm);
    while (true) {
      for (std::size_t k = 0; k < mm; ++k) idx[k] = active[pick[k]];
      total += principal_minor(a, idx);
      std::size_t k = mm;
      while (k > 0 && pick[k - 1] == active.size() - mm + k - 1) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t r = k; r < mm; ++r) pick[r] = pick[r - 1] + 1;
    }
    c[mm] = (m % 2 == 0) ? total : Rational(-total);
  }
  return c;
}

// det(1 - t a) from det(t - a): c_m = a_{N-m}
std::vector<Rational> reversed_charpoly(const RatMatrix& a, std::int64_t degree) {
  auto cp = charpoly_berkowitz(a);
  const auto n = static_cast<std::int64_t>(a.rows());
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  for (std::int64_t m = 0; m <= degree && m <= n; ++m) c[static_cast<std::size_t>(m)] = cp[static_cast<std::size_t>(n - m)];
  return c;
}

Integer to_residue(const Rational& q, const Integer& modulus) {
  return mod(q.get_num() * mod_inverse(q.get_den(), modulus), modulus);
}

}  // namespace

std::int64_t max_truncation() {
  if (const char* env = std::getenv("BERKLINE_MAX_MINOR_DIM")) {
    try {
      std::int64_t v = std::stoll(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxTruncation;
}

FredholmSeries fredholm_coeffs(const OperatorSpec& spec, std::int64_t degree, std::int64_t truncation, int digits) {
  if (degree < 0) fail(ErrorCode::InvalidArgument, "degree must be >= 0");
  if (truncation < degree) {
    fail(ErrorCode::TruncationInsufficient,
         "truncation " + std::to_string(truncation) + " is smaller than degree " + std::to_string(degree));
  }
  if (truncation > max_truncation()) {
    fail(ErrorCode::InvalidArgument, "truncation " + std::to_string(truncation) + " exceeds the cap " +
                                         std::to_string(max_truncation()) + " (BERKLINE_MAX_MINOR_DIM)");
  }
  Truncation tr = truncate(spec, truncation);
  const RatMatrix& a = tr.matrix.m;

  FredholmSeries s;
  s.p = spec.p;
  s.degree = degree;
  s.truncation = truncation;
  switch (spec.kind) {
    case OperatorSpec::Kind::Diagonal:
      s.exact = diagonal_product(a, degree);
      s.method = "diagonal-product";
      break;
    case OperatorSpec::Kind::Banded:
      s.exact = reversed_charpoly(a, degree);
      s.method = "berkowitz";
      break;
    case OperatorSpec::Kind::General:
      if (degree > kMaxMinorDegree) {
        fail(ErrorCode::InvalidArgument, "principal-minor enumeration is capped at degree " +
                                             std::to_string(kMaxMinorDegree));
      }
      s.exact = principal_minor_sums(a, degree);
      s.method = "principal-minors";
      break;
  }
  if (s.exact != reversed_charpoly(a, degree)) {
    fail(ErrorCode::IdentityViolation, "Fredholm coefficients disagree with the characteristic polynomial");
  }

  for (std::int64_t m = 0; m <= degree; ++m) {
    const Rational& c = s.exact[static_cast<std::size_t>(m)];
    s.coeffs.push_back(PadicNumber::from_rational(spec.p, c, digits));
    ExtRational bound = tr.coeff_error_bound(m);
    s.stabilization.push_back(bound);
    ExtRational v = valuation_of(c, spec.p);
    if (bound.is_infinite()) {
      s.valuation_certified.push_back(true);
      s.certified_unit_digits.push_back(-1);
    } else if (v.is_infinite()) {
      s.valuation_certified.push_back(false);
      s.certified_unit_digits.push_back(0);
    } else {
      Rational gap = bound.value() - v.value();
      s.valuation_certified.push_back(gap > 0);
      s.certified_unit_digits.push_back(gap > 0 ? to_int64(ceil(gap)) : 0);
    }
  }
  return s;
}

std::vector<Rational> truncation_determinant(const OperatorSpec& spec, std::int64_t truncation) {
  return reversed_charpoly(truncate(spec, truncation).matrix.m, truncation);
}

Resolvent fredholm_resolvent(const FredholmSeries& series, const OperatorSpec& spec) {
  const RatMatrix u = truncate(spec, series.truncation).matrix.m;
  const std::size_t n = u.rows();
  const RatMatrix id = RatMatrix::identity(n);
  if (series.exact.empty() || series.exact[0] != 1) fail(ErrorCode::IdentityViolation, "c_0 is not 1");

  Resolvent r;
  r.x.push_back({spec.p, id});
  for (std::size_t k = 1; k < series.exact.size(); ++k) {
    RatMatrix next = series.exact[k] * id + u * r.x.back().m;
    // coefficient of t^k in P(t, u)(1 - t u)
    if (next - r.x.back().m * u != series.exact[k] * id) {
      fail(ErrorCode::IdentityViolation, "resolvent identity fails at degree " + std::to_string(k));
    }
    r.x.push_back({spec.p, std::move(next)});
  }

  // k c_k + sum_{j=1}^k tr(u^j) c_{k-j} = 0
  std::vector<Rational> traces;
  RatMatrix power = id;
  for (std::size_t k = 1; k < series.exact.size(); ++k) {
    power = power * u;
    traces.push_back(trace(power));
    Rational acc = Rational(static_cast<long>(k)) * series.exact[k];
    for (std::size_t j = 1; j <= k; ++j) acc += traces[j - 1] * series.exact[k - j];
    if (acc != 0) fail(ErrorCode::IdentityViolation, "trace identity fails at degree " + std::to_string(k));
  }

  if (series.degree >= static_cast<std::int64_t>(n) && !r.x[n].m.is_zero()) {
    fail(ErrorCode::IdentityViolation, "x_N does not vanish");
  }
  r.verified = true;
  return r;
}

NewtonPolygon newton_polygon(const FredholmSeries& series) {
  std::vector<ExtRational> vals;
  for (std::size_t m = 0; m < series.exact.size(); ++m) {
    if (!series.valuation_certified[m]) {
      fail(ErrorCode::IndeterminateValuation,
           "valuation of c_" + std::to_string(m) + " is not certified at truncation " + std::to_string(series.truncation));
    }
    vals.push_back(valuation_of(series.exact[m], series.p));
  }
  return newton_polygon(vals);
}

ZeroBound check_zero_bound(const FredholmSeries& series, const OperatorSpec& spec, std::int64_t n_max) {
  ZeroBound out;
  auto zeros = zero_valuations(newton_polygon(series), series.p);
  for (const auto& z : zeros) {
    if (!out.min_zero || mag_less(z.magnitude, *out.min_zero)) out.min_zero = z.magnitude;
  }

  SpectralRadius r = spectral_radius(spec, n_max, series.truncation);
  out.radius = r.estimate;
  out.radius_exact = r.exact;
  if (r.estimate.is_zero()) {
    out.holds = zeros.empty();
    return out;
  }
  out.inv_radius = mag_inv(r.estimate);
  out.holds = true;
  for (const auto& z : zeros) out.holds = out.holds && mag_le(*out.inv_radius, z.magnitude);
  return out;
}

std::vector<ZeroReport> find_rational_zeros(const std::vector<Rational>& poly, std::int64_t p, int precision) {
  if (precision < 1) fail(ErrorCode::InvalidArgument, "precision must be >= 1");
  std::vector<ExtRational> vals;
  for (const auto& c : poly) vals.push_back(valuation_of(c, p));
  NewtonPolygon ng = newton_polygon(vals);
  std::vector<ZeroReport> out;

  const Integer big_p = p;
  const Integer modulus = ipow(big_p, static_cast<std::uint64_t>(precision));
  for (std::size_t seg = 0; seg < ng.segments.size(); ++seg) {
    const auto& s = ng.segments[seg];
    const auto [m0, v0] = ng.vertices[seg];
    const std::int64_t len = s.length;
    const Rational root_val = -s.slope;
    if (s.slope.get_den() != 1 || p > 100000) {
      out.push_back({root_val, len, std::nullopt, std::nullopt,
                     s.slope.get_den() != 1 ? "root valuation is not an integer; zeros lie in a ramified extension"
                                            : "residue search skipped for large p"});
      continue;
    }
    const std::int64_t sl = to_int64(s.slope.get_num());
    // G(y) = f(p^{-sl} y) / p^{v0 - sl m0} has p-integral coefficients
    const Rational shift = v0 - Rational(sl * m0);
    std::vector<Rational> g(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) {
      g[k] = poly[k] * rpow(Rational(p), -sl * static_cast<std::int64_t>(k) - to_int64(shift.get_num()));
    }
    auto eval_mod = [&](const Integer& y, const Integer& mod_n, bool deriv) {
      Integer acc = 0;
      for (std::size_t k = g.size(); k-- > (deriv ? 1u : 0u);) {
        Integer coef = to_residue(g[k], mod_n);
        if (deriv) coef *= static_cast<long>(k);
        acc = mod(acc * y + coef, mod_n);
      }
      return acc;
    };
    std::int64_t lifted = 0;
    for (std::int64_t r0 = 1; r0 < p && lifted < len; ++r0) {
      Integer y = r0;
      if (eval_mod(y, big_p, false) != 0) continue;
      if (eval_mod(y, big_p, true) == 0) continue;  // multiple residue root
      for (int it = 0; it < 128; ++it) {
        Integer gv = eval_mod(y, modulus, false);
        if (gv == 0) break;
        y = mod(y - gv * mod_inverse(eval_mod(y, modulus, true), modulus), modulus);
      }
      ZeroReport rep;
      rep.valuation = root_val;
      std::optional<Rational> exact;
      for (const Integer& cand : {y, Integer(y - modulus)}) {
        Rational val = 0;
        for (std::size_t k = g.size(); k-- > 0;) val = val * Rational(cand) + g[k];
        if (val == 0) exact = rpow(Rational(p), -sl) * Rational(cand);
      }
      rep.root = exact ? PadicNumber::from_rational(p, *exact, precision)
                       : PadicNumber::from_unit(p, -sl, y, precision);
      PadicNumber f = PadicNumber::zero(p);
      for (std::size_t k = poly.size(); k-- > 0;) f = f * *rep.root + PadicNumber::from_rational(p, poly[k], precision);
      if (f.is_zero()) {
        rep.residual = Magnitude::zero();
      } else if (f.is_indeterminate()) {
        rep.residual = Magnitude::exp(Rational(p), Rational(-f.absolute_precision()));
      } else {
        rep.residual = Magnitude::exp(Rational(p), Rational(-f.valuation()));
      }
      rep.note = exact ? "exact rational zero" : "Hensel lifted";
      out.push_back(rep);
      ++lifted;
    }
    if (lifted < len) {
      out.push_back({root_val, len - lifted, std::nullopt, std::nullopt,
                     "zeros outside Q_p or at a multiple residue root"});
    }
  }
  return out;
}

}  // namespace berkline
