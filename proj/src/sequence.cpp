#include "berkline/sequence.hpp"

#include <cmath>
#include <limits>

#include "berkline/error.hpp"

namespace berkline {

namespace {

[[noreturn]] void unsupported(const std::string& why) { fail(ErrorCode::UnsupportedDescriptor, why); }

// Eventual behaviour of a sequence, as sign * i^alpha * rho^i * (ln i)^gamma.
// sign 0 means the sequence is eventually 0 (or tends to 0 in the leading term).
struct Asymptotic {
  int sign = 0;
  Rational alpha = 0;
  Rational rho = 1;
  Rational gamma = 0;

  static Asymptotic constant(int s) { return {s, 0, 1, 0}; }
  static Asymptotic linear(int s) { return {s, 1, 1, 0}; }
};

Asymptotic operator*(const Asymptotic& a, const Asymptotic& b) {
  return {a.sign * b.sign, a.alpha + b.alpha, a.rho * b.rho, a.gamma + b.gamma};
}

enum class Limit { Zero, Finite, PlusInfinity, MinusInfinity };

Limit limit_of(const Asymptotic& a) {
  if (a.sign == 0) return Limit::Zero;
  auto infinite = [&]() { return a.sign > 0 ? Limit::PlusInfinity : Limit::MinusInfinity; };
  if (a.rho > 1) return infinite();
  if (a.rho < 1) return Limit::Zero;
  if (a.alpha > 0) return infinite();
  if (a.alpha < 0) return Limit::Zero;
  if (a.gamma > 0) return infinite();
  if (a.gamma < 0) return Limit::Zero;
  return Limit::Finite;
}

Asymptotic asymptotic_of(const GrowthTerm& g) {
  int s = sgn(g.c);
  switch (g.form) {
    case GrowthTerm::Form::Constant: return Asymptotic::constant(s);
    case GrowthTerm::Form::OverIndex: return {s, -1, 1, 0};
    case GrowthTerm::Form::TimesIndex: return {s, 1, 1, 0};
    case GrowthTerm::Form::Geometric: return {s, 0, g.q, 0};
  }
  return {};
}

void validate_growth(const GrowthTerm& g) {
  if (g.c <= 0) fail(ErrorCode::InvalidArgument, "exponent coefficient must be positive");
  if (g.form == GrowthTerm::Form::Geometric && g.q <= 0) fail(ErrorCode::InvalidArgument, "geometric ratio must be positive");
}

int sign_of_log(const Rational& x) {
  Rational a = abs(x);
  return a > 1 ? 1 : (a < 1 ? -1 : 0);
}

std::int64_t vq(const Integer& b, std::int64_t q) { return b == 0 ? 0 : padic_valuation(b, q); }

// Element with a constant tail folded into the constant part.
struct Normalized {
  Rational constant = 0;
  std::optional<ElementTail> tail;
};

Normalized normalize(const ElementFormula& e) {
  if (!e.has_closed_form()) unsupported("element given by an explicit prefix only");
  Normalized n;
  n.constant = e.constant.value_or(Rational(0));
  if (e.tail && e.tail->c != 0) {
    if (!e.tail->field_prime && e.tail->base < 2) fail(ErrorCode::InvalidArgument, "tail base must be >= 2");
    if (e.tail->slope == 0 && !e.tail->field_prime) {
      n.constant += e.tail->c * rpow(Rational(e.tail->base), e.tail->offset);
    } else {
      n.tail = e.tail;
    }
  }
  return n;
}

// Fixed prime q: v_q(c * b^(a i + e)) = tau0 + alpha * i.
struct TailValuation {
  std::int64_t alpha;
  std::int64_t tau0;
};

TailValuation tail_valuation(const ElementTail& t, std::int64_t q) {
  std::int64_t vb = t.field_prime ? 1 : vq(t.base, q);
  return {t.slope * vb, padic_valuation(t.c, q) + t.offset * vb};
}

// Eventual behaviour of V_i = v_{p_i}(s_i - target) for the p-adic family.
// `identically_zero` is set when s_i equals the target for all large i.
Asymptotic valuation_asymptotic(const SequenceDescriptor& seq, const Rational& target, bool& identically_zero) {
  Normalized n = normalize(seq.element);
  Rational d0 = n.constant - target;
  identically_zero = false;
  if (n.tail && n.tail->field_prime && n.tail->slope == 0) {
    if (seq.prime.enumerate) {
      // c * p_i^e has valuation e for large p_i
      if (d0 == 0) return Asymptotic::constant(n.tail->offset > 0 ? 1 : (n.tail->offset < 0 ? -1 : 0));
      return n.tail->offset < 0 ? Asymptotic::constant(-1) : Asymptotic::constant(0);
    }
    n.constant += n.tail->c * rpow(Rational(seq.prime.q), n.tail->offset);
    d0 = n.constant - target;
    n.tail.reset();
  }
  if (!n.tail) {
    if (d0 == 0) {
      identically_zero = true;
      return Asymptotic::constant(0);
    }
    if (seq.prime.enumerate) return Asymptotic::constant(0);
    std::int64_t w = padic_valuation(d0, seq.prime.q);
    return Asymptotic::constant(w > 0 ? 1 : (w < 0 ? -1 : 0));
  }
  const ElementTail& t = *n.tail;
  if (seq.prime.enumerate) {
    if (t.field_prime) {
      if (d0 == 0) return Asymptotic::linear(t.slope > 0 ? 1 : -1);
      return t.slope > 0 ? Asymptotic::constant(0) : Asymptotic::linear(-1);
    }
    if (d0 == 0) return Asymptotic::constant(0);
    unsupported("valuation of a constant plus an integer-power tail at the i-th prime");
  }
  TailValuation tv = tail_valuation(t, seq.prime.q);
  if (d0 == 0) {
    if (tv.alpha != 0) return Asymptotic::linear(tv.alpha > 0 ? 1 : -1);
    return Asymptotic::constant(tv.tau0 > 0 ? 1 : (tv.tau0 < 0 ? -1 : 0));
  }
  std::int64_t w = padic_valuation(d0, seq.prime.q);
  auto sign = [](std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  if (tv.alpha > 0) return Asymptotic::constant(sign(w));
  if (tv.alpha < 0) return Asymptotic::linear(-1);
  if (tv.tau0 != w) return Asymptotic::constant(sign(std::min(w, tv.tau0)));
  // Equal valuations with a unit base: V_i grows at most logarithmically.
  return {1, 0, 1, 1};
}

// Eventual residue of s_i at the fixed prime q.
struct EventualResidue {
  enum class Kind { Residue, NonIntegral, NotConstant };
  Kind kind;
  Integer residue;
};

bool integral_at(const Rational& x, std::int64_t q) { return x == 0 || padic_valuation(x, q) >= 0; }

EventualResidue eventual_residue(const ElementFormula& e, std::int64_t q) {
  Normalized n = normalize(e);
  if (n.tail && n.tail->field_prime && n.tail->slope == 0) {
    n.constant += n.tail->c * rpow(Rational(q), n.tail->offset);
    n.tail.reset();
  }
  auto of_constant = [&](const Rational& r) -> EventualResidue {
    if (!integral_at(r, q)) return {EventualResidue::Kind::NonIntegral, 0};
    return {EventualResidue::Kind::Residue, residue_bracket(q, r)};
  };
  if (!n.tail) return of_constant(n.constant);
  TailValuation tv = tail_valuation(*n.tail, q);
  if (tv.alpha > 0) return of_constant(n.constant);
  if (tv.alpha < 0) return {EventualResidue::Kind::NonIntegral, 0};
  if (tv.tau0 > 0) return of_constant(n.constant);
  if (tv.tau0 < 0) {
    if (n.constant != 0 && padic_valuation(n.constant, q) == tv.tau0) {
      unsupported("cancellation between constant and unit-base tail below valuation 0");
    }
    return {EventualResidue::Kind::NonIntegral, 0};
  }
  if (!integral_at(n.constant, q)) return {EventualResidue::Kind::NonIntegral, 0};
  // b is a unit mod q, so the residues are periodic with period dividing q - 1.
  const Integer Q(static_cast<long>(q));
  Integer base_residue = mod(n.tail->base, Q);
  std::optional<Integer> first;
  for (std::int64_t i = 1; i <= q; ++i) {
    std::int64_t exponent = n.tail->slope * i + n.tail->offset;
    Integer pw;
    if (exponent >= 0) {
      mpz_powm_ui(pw.get_mpz_t(), base_residue.get_mpz_t(), static_cast<unsigned long>(exponent), Q.get_mpz_t());
    } else {
      Integer inv = mod_inverse(base_residue, Q);
      mpz_powm_ui(pw.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(-exponent), Q.get_mpz_t());
    }
    Integer r = mod(Integer(residue_bracket(q, n.constant) + residue_bracket(q, n.tail->c) * pw), Q);
    if (!first) {
      first = r;
    } else if (*first != r) {
      return {EventualResidue::Kind::NotConstant, 0};
    }
  }
  return {EventualResidue::Kind::Residue, *first};
}

bool converges_to_residue(const SequenceDescriptor& seq, const TrivialFinite& target) {
  switch (seq.family) {
    case SequenceDescriptor::Family::Real: return false;
    case SequenceDescriptor::Family::Padic: {
      if (seq.prime.enumerate || seq.prime.q != target.p) return false;
      if (limit_of(asymptotic_of(seq.exponent)) != Limit::PlusInfinity) return false;
      EventualResidue r = eventual_residue(seq.element, target.p);
      return r.kind == EventualResidue::Kind::Residue && r.residue == target.residue;
    }
    case SequenceDescriptor::Family::Finite: {
      if (seq.prime.enumerate || seq.prime.q != target.p) return false;
      EventualResidue r = eventual_residue(seq.element, target.p);
      if (r.kind == EventualResidue::Kind::NonIntegral) {
        fail(ErrorCode::DivisorCollision, "element is not integral at " + std::to_string(target.p));
      }
      return r.kind == EventualResidue::Kind::Residue && r.residue == target.residue;
    }
  }
  return false;
}

bool converges_to_rational(const SequenceDescriptor& seq, const Rational& target) {
  switch (seq.family) {
    case SequenceDescriptor::Family::Real: {
      // upsilon_i -> 0 and upsilon_i * ln|t_i - target| -> -inf
      if (limit_of(asymptotic_of(seq.exponent)) != Limit::Zero) return false;
      Normalized n = normalize(seq.element);
      if (n.tail && n.tail->field_prime) fail(ErrorCode::InvalidArgument, "real sequences have no field prime");
      Rational d0 = n.constant - target;
      Asymptotic log_diff;
      if (!n.tail) {
        if (d0 == 0) return true;
        log_diff = Asymptotic::constant(sign_of_log(d0));
      } else {
        const ElementTail& t = *n.tail;
        if (d0 == 0) {
          log_diff = Asymptotic::linear(t.slope > 0 ? 1 : -1);
        } else {
          log_diff = t.slope > 0 ? Asymptotic::linear(1) : Asymptotic::constant(sign_of_log(d0));
        }
      }
      return limit_of(asymptotic_of(seq.exponent) * log_diff) == Limit::MinusInfinity;
    }
    case SequenceDescriptor::Family::Padic: {
      // |k|_{p_i}^{omega_i} -> 1 for all k, and omega_i * V_i * ln p_i -> +inf
      Asymptotic omega = asymptotic_of(seq.exponent);
      if (!seq.prime.enumerate && limit_of(omega) != Limit::Zero) return false;
      bool identically_zero = false;
      Asymptotic v = valuation_asymptotic(seq, target, identically_zero);
      if (identically_zero) return true;
      Asymptotic log_p = seq.prime.enumerate ? Asymptotic{1, 0, 1, 1} : Asymptotic::constant(1);
      bool log_bound_only = v.gamma > 0 && !seq.prime.enumerate;
      Limit l = limit_of(omega * v * log_p);
      if (l == Limit::PlusInfinity && log_bound_only) unsupported("valuation growth only bounded from above");
      return l == Limit::PlusInfinity;
    }
    case SequenceDescriptor::Family::Finite: {
      // p_i -> inf and eventually [s_i]_{p_i} = [m/n]_{p_i}
      if (!seq.prime.enumerate) return false;
      Normalized n = normalize(seq.element);
      Rational d0 = n.constant - target;
      if (n.tail) {
        const ElementTail& t = *n.tail;
        if (t.field_prime) {
          if (t.slope < 0 || (t.slope == 0 && t.offset < 0)) {
            fail(ErrorCode::DivisorCollision, "tail has the field prime in its denominator");
          }
          if (t.slope == 0 && t.offset == 0) d0 += t.c;
          // otherwise the tail vanishes mod p_i
        } else if (d0 == 0) {
          return false;
        } else {
          unsupported("divisibility of a constant plus an integer-power tail by the i-th prime");
        }
      }
      return d0 == 0;
    }
  }
  return false;
}

}  // namespace

Rational GrowthTerm::at(std::int64_t i) const {
  switch (form) {
    case Form::Constant: return c;
    case Form::OverIndex: return c / i;
    case Form::TimesIndex: return c * i;
    case Form::Geometric: return c * rpow(q, i);
  }
  return c;
}

std::int64_t PrimeSequence::at(std::int64_t i) const { return enumerate ? nth_prime(i) : q; }

Rational element_at(const SequenceDescriptor& seq, std::int64_t i) {
  if (i < 1) fail(ErrorCode::InvalidArgument, "sequence index starts at 1");
  const ElementFormula& e = seq.element;
  if (static_cast<std::size_t>(i) <= e.prefix.size()) return e.prefix[i - 1];
  if (!e.has_closed_form()) fail(ErrorCode::InvalidArgument, "index beyond the explicit prefix");
  Rational v = e.constant.value_or(Rational(0));
  if (e.tail) {
    Rational base = e.tail->field_prime ? Rational(seq.prime.at(i)) : Rational(e.tail->base);
    v += e.tail->c * rpow(base, e.tail->slope * i + e.tail->offset);
  }
  return v;
}

Point instantiate(const SequenceDescriptor& seq, std::int64_t i, int digits) {
  validate_growth(seq.exponent);
  Rational s = element_at(seq, i);
  switch (seq.family) {
    case SequenceDescriptor::Family::Real: return make_real_power(seq.exponent.at(i), s);
    case SequenceDescriptor::Family::Padic: {
      std::int64_t p = seq.prime.at(i);
      return make_padic_power(p, seq.exponent.at(i), s, digits);
    }
    case SequenceDescriptor::Family::Finite: {
      std::int64_t p = seq.prime.at(i);
      return make_trivial_finite(p, residue_bracket(p, s));
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown family");
}

bool converges_to(const SequenceDescriptor& seq, const Point& target) {
  validate_growth(seq.exponent);
  if (!seq.prime.enumerate && !is_prime(seq.prime.q)) fail(ErrorCode::InvalidArgument, "prime sequence constant is not prime");
  Point t = canonical(target);
  if (const auto* r = std::get_if<TrivialRational>(&t)) return converges_to_rational(seq, r->r);
  if (const auto* f = std::get_if<TrivialFinite>(&t)) return converges_to_residue(seq, *f);
  unsupported("convergence is decided only toward trivially valued rationals and residues");
}

LimitReport numeric_limit_check(const std::vector<Point>& seq, const Point& target, const std::vector<IntPoly>& polys,
                                double tol, std::size_t tail) {
  if (polys.empty()) fail(ErrorCode::InvalidArgument, "numeric_limit_check needs at least one polynomial");
  LimitReport report;
  if (seq.empty()) return report;
  std::size_t start = (tail == 0 || tail >= seq.size()) ? 0 : seq.size() - tail;
  report.tail_start = start + 1;
  std::vector<Magnitude> limit;
  for (const auto& p : polys) limit.push_back(eval_point(target, p));
  for (std::size_t i = start; i < seq.size(); ++i) {
    for (std::size_t k = 0; k < polys.size(); ++k) {
      Magnitude v = eval_point(seq[i], polys[k]);
      double dev = 0.0;
      if (!(v == limit[k])) {
        dev = std::fabs(v.to_double() - limit[k].to_double());
        if (std::isnan(dev)) dev = std::numeric_limits<double>::infinity();
      }
      if (dev > report.max_deviation || (i == start && k == 0)) {
        report.max_deviation = dev;
        report.worst_index = i + 1;
        report.worst_poly = k;
      }
    }
  }
  report.within_tolerance = report.max_deviation < tol;
  return report;
}

}  // namespace berkline
