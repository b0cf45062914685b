#include "berkline/point.hpp"

#include "berkline/error.hpp"
#include "overloaded.hpp"

namespace berkline {

using detail::overloaded;

namespace {

void check_upsilon(const Rational& u) {
  if (u <= 0 || u > 1) fail(ErrorCode::InvalidArgument, "upsilon must lie in (0,1], got " + to_string(u));
}

void check_omega(const Rational& w) {
  if (w <= 0) fail(ErrorCode::InvalidArgument, "omega must be > 0, got " + to_string(w));
}

void check_prime(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

Magnitude trivial(bool is_zero) { return is_zero ? Magnitude::zero() : Magnitude::one(); }

PadicNumber eval_padic(const IntPoly& poly, const PadicNumber& s) {
  const std::int64_t p = s.prime();
  const int digits = s.digits() > 0 ? s.digits() : kDefaultPadicDigits;
  PadicNumber acc = PadicNumber::zero(p);
  for (auto it = poly.coeffs().rbegin(); it != poly.coeffs().rend(); ++it) {
    acc = acc * s + PadicNumber::from_rational(p, Rational(*it), digits);
  }
  return acc;
}

// den * t - num, the primitive linear polynomial vanishing at r.
IntPoly linear_poly(const Rational& r) { return IntPoly({Integer(-r.get_num()), r.get_den()}); }

}  // namespace

Point make_trivial_rational(const Rational& r) { return TrivialRational{r}; }

Point make_trivial_algebraic(const IntPoly& minpoly) {
  if (minpoly.degree() < 1) fail(ErrorCode::InvalidArgument, "minimal polynomial must have degree >= 1");
  IntPoly m = primitive_part(minpoly);
  if (!is_irreducible(m)) fail(ErrorCode::InvalidArgument, to_string(minpoly) + " is reducible over Q");
  return TrivialAlgebraic{m};
}

Point make_trivial_finite(std::int64_t p, const Integer& residue) {
  check_prime(p);
  return TrivialFinite{p, mod(residue, Integer(static_cast<long>(p)))};
}

Point make_real_power(const Rational& upsilon, const Rational& t) {
  check_upsilon(upsilon);
  return RealPower{upsilon, t};
}

Point make_complex_fold(const Rational& upsilon, const GaussianRational& z) {
  check_upsilon(upsilon);
  return ComplexFold{upsilon, z.im < 0 ? z.conj() : z};
}

Point make_padic_power(std::int64_t p, const Rational& omega, const PadicNumber& s) {
  check_prime(p);
  check_omega(omega);
  if (s.prime() != p) fail(ErrorCode::InvalidArgument, "p-adic element over the wrong prime");
  return PadicPower{p, omega, s};
}

Point make_padic_power(std::int64_t p, const Rational& omega, const Rational& s, int digits) {
  check_prime(p);
  return make_padic_power(p, omega, PadicNumber::from_rational(p, s, digits));
}

void validate(const Point& x) {
  std::visit(overloaded{
                 [](const TrivialRational&) {},
                 [](const TrivialAlgebraic& a) {
                   if (a.minpoly.degree() < 1 || content(a.minpoly) != 1 || a.minpoly.leading() < 0 ||
                       !is_irreducible(a.minpoly)) {
                     fail(ErrorCode::InvalidArgument, "invalid minimal polynomial " + to_string(a.minpoly));
                   }
                 },
                 [](const GenericTrivial&) {},
                 [](const TrivialFinite& f) {
                   check_prime(f.p);
                   if (f.residue < 0 || f.residue >= f.p) fail(ErrorCode::InvalidArgument, "residue out of range");
                 },
                 [](const RealPower& r) { check_upsilon(r.upsilon); },
                 [](const ComplexFold& c) {
                   check_upsilon(c.upsilon);
                   if (c.z.im < 0) fail(ErrorCode::InvalidArgument, "complex point not folded to Im z >= 0");
                 },
                 [](const PadicPower& a) {
                   check_prime(a.p);
                   check_omega(a.omega);
                   if (a.s.prime() != a.p) fail(ErrorCode::InvalidArgument, "p-adic element over the wrong prime");
                 },
             },
             x);
}

std::string kind_name(const Point& x) {
  return std::visit(overloaded{
                        [](const TrivialRational&) { return "trivial-rational"; },
                        [](const TrivialAlgebraic&) { return "trivial-algebraic"; },
                        [](const GenericTrivial&) { return "generic-trivial"; },
                        [](const TrivialFinite&) { return "trivial-finite"; },
                        [](const RealPower&) { return "real-power"; },
                        [](const ComplexFold&) { return "complex-fold"; },
                        [](const PadicPower&) { return "padic-power"; },
                    },
                    x);
}

std::string to_string(const Point& x) {
  return std::visit(
      overloaded{
          [](const TrivialRational& a) { return "(Q0, " + to_string(a.r) + ")"; },
          [](const TrivialAlgebraic& a) { return "(Q0-bar, root of " + to_string(a.minpoly) + ")"; },
          [](const GenericTrivial&) { return std::string("(Z(t), t)"); },
          [](const TrivialFinite& a) { return "(F_" + std::to_string(a.p) + ", " + to_string(a.residue) + ")"; },
          [](const RealPower& a) { return "(R^" + to_string(a.upsilon) + ", " + to_string(a.t) + ")"; },
          [](const ComplexFold& a) { return "(C^" + to_string(a.upsilon) + ", " + to_string(a.z) + ")"; },
          [](const PadicPower& a) {
            return "(Q_" + std::to_string(a.p) + "^" + to_string(a.omega) + ", " + a.s.str() + ")";
          },
      },
      x);
}

std::string to_string(const BasePoint& b) {
  return std::visit(overloaded{
                        [](const ZeroQ&) { return std::string("0_Q"); },
                        [](const ZeroR& z) { return "0_R^" + to_string(z.upsilon); },
                        [](const ZeroP& z) { return "0_" + std::to_string(z.p) + "^" + to_string(z.omega); },
                        [](const ZeroPInf& z) { return "0_" + std::to_string(z.p) + "^inf"; },
                    },
                    b);
}

MinimalFieldTag base_field(const BasePoint& b) {
  return std::visit(overloaded{
                        [](const ZeroQ&) -> MinimalFieldTag { return FieldQ0{}; },
                        [](const ZeroR& z) -> MinimalFieldTag { return FieldRv{z.upsilon}; },
                        [](const ZeroP& z) -> MinimalFieldTag { return FieldQpw{z.p, z.omega}; },
                        [](const ZeroPInf& z) -> MinimalFieldTag { return FieldFp{z.p}; },
                    },
                    b);
}

Point to_point(const BasePoint& b) {
  return std::visit(overloaded{
                        [](const ZeroQ&) { return make_trivial_rational(0); },
                        [](const ZeroR& z) { return make_real_power(z.upsilon, 0); },
                        [](const ZeroP& z) { return make_padic_power(z.p, z.omega, Rational(0)); },
                        [](const ZeroPInf& z) { return make_trivial_finite(z.p, 0); },
                    },
                    b);
}

Magnitude eval_point(const Point& x, const IntPoly& poly) {
  return std::visit(
      overloaded{
          [&](const TrivialRational& a) { return trivial(evaluate(poly, a.r) == 0); },
          [&](const TrivialAlgebraic& a) { return trivial(divides(a.minpoly, poly)); },
          [&](const GenericTrivial&) { return trivial(poly.is_zero()); },
          [&](const TrivialFinite& a) {
            return trivial(evaluate_mod(poly, a.residue, Integer(static_cast<long>(a.p))) == 0);
          },
          [&](const RealPower& a) { return mag_pow(Magnitude::of(evaluate(poly, a.t)), a.upsilon); },
          [&](const ComplexFold& a) {
            GaussianRational v = poly.evaluate<GaussianRational>(a.z, GaussianRational(0));
            // |v|^upsilon = (|v|^2)^(upsilon/2), exact
            return mag_pow(Magnitude::of(v.norm2()), Rational(a.upsilon / 2));
          },
          [&](const PadicPower& a) { return abs_value(FieldQpw{a.p, a.omega}, eval_padic(poly, a.s)); },
      },
      x);
}

Magnitude abs_point(const Point& x) { return eval_point(x, IntPoly::variable()); }

BasePoint base_point(const Point& x) {
  return std::visit(overloaded{
                        [](const TrivialRational&) -> BasePoint { return ZeroQ{}; },
                        [](const TrivialAlgebraic&) -> BasePoint { return ZeroQ{}; },
                        [](const GenericTrivial&) -> BasePoint { return ZeroQ{}; },
                        [](const TrivialFinite& a) -> BasePoint { return ZeroPInf{a.p}; },
                        [](const RealPower& a) -> BasePoint { return ZeroR{a.upsilon}; },
                        [](const ComplexFold& a) -> BasePoint { return ZeroR{a.upsilon}; },
                        [](const PadicPower& a) -> BasePoint { return ZeroP{a.p, a.omega}; },
                    },
                    x);
}

bool is_ultrametric(const Point& x) {
  return !std::holds_alternative<RealPower>(x) && !std::holds_alternative<ComplexFold>(x);
}

Point canonical(const Point& x) {
  if (const auto* a = std::get_if<TrivialAlgebraic>(&x); a && a->minpoly.degree() == 1) {
    return TrivialRational{Rational(make_rational(-a->minpoly.coeffs()[0], a->minpoly.coeffs()[1]))};
  }
  if (const auto* c = std::get_if<ComplexFold>(&x)) {
    if (c->z.im == 0) return RealPower{c->upsilon, c->z.re};
    if (c->z.im < 0) return ComplexFold{c->upsilon, c->z.conj()};
  }
  if (const auto* f = std::get_if<TrivialFinite>(&x)) {
    return TrivialFinite{f->p, mod(f->residue, Integer(static_cast<long>(f->p)))};
  }
  return x;
}

namespace {

// Polynomials that tend to separate points: small constants, t, and the
// defining polynomials of both points.
std::vector<IntPoly> witness_candidates(const Point& x, const Point& y) {
  std::vector<IntPoly> out;
  for (std::int64_t q : primes_up_to(50)) out.push_back(IntPoly::constant(Integer(static_cast<long>(q))));
  out.push_back(IntPoly::variable());
  auto defining = [&](const Point& z) {
    std::visit(overloaded{
                   [&](const TrivialRational& a) { out.push_back(linear_poly(a.r)); },
                   [&](const TrivialAlgebraic& a) { out.push_back(a.minpoly); },
                   [&](const GenericTrivial&) {},
                   [&](const TrivialFinite& a) {
                     out.push_back(IntPoly({Integer(-a.residue), Integer(1)}));
                   },
                   [&](const RealPower& a) { out.push_back(linear_poly(a.t)); },
                   [&](const ComplexFold& a) {
                     RatPoly q({Rational(a.z.norm2()), Rational(-2 * a.z.re), Rational(1)});
                     out.push_back(clear_denominators(q));
                   },
                   [&](const PadicPower& a) {
                     if (a.s.exact()) {
                       out.push_back(linear_poly(*a.s.exact()));
                     } else if (a.s.state() == PadicNumber::State::Finite && a.s.valuation() >= 0) {
                       Integer approx = a.s.unit() * ipow(a.p, static_cast<std::uint64_t>(a.s.valuation()));
                       out.push_back(IntPoly({Integer(-approx), Integer(1)}));
                     }
                   },
               },
               z);
  };
  defining(x);
  defining(y);
  for (long k = -3; k <= 3; ++k) out.push_back(IntPoly({Integer(k), Integer(1)}));
  out.push_back(IntPoly({Integer(1), Integer(0), Integer(1)}));
  return out;
}

std::optional<IntPoly> find_witness(const Point& x, const Point& y) {
  for (const auto& poly : witness_candidates(x, y)) {
    try {
      if (mag_cmp(eval_point(x, poly), eval_point(y, poly)) != Ordering::Equal) return poly;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted && e.code() != ErrorCode::IndeterminateValuation) throw;
    }
  }
  return std::nullopt;
}

}  // namespace

PointEquality points_equal(const Point& x0, const Point& y0) {
  Point x = canonical(x0);
  Point y = canonical(y0);
  PointEquality result;
  if (x.index() == y.index()) {
    result.equal = std::visit(
        overloaded{
            [&](const TrivialRational& a) { return a.r == std::get<TrivialRational>(y).r; },
            [&](const TrivialAlgebraic& a) {
              return primitive_part(a.minpoly) == primitive_part(std::get<TrivialAlgebraic>(y).minpoly);
            },
            [&](const GenericTrivial&) { return true; },
            [&](const TrivialFinite& a) {
              const auto& b = std::get<TrivialFinite>(y);
              return a.p == b.p && a.residue == b.residue;
            },
            [&](const RealPower& a) {
              const auto& b = std::get<RealPower>(y);
              return a.upsilon == b.upsilon && a.t == b.t;
            },
            [&](const ComplexFold& a) {
              const auto& b = std::get<ComplexFold>(y);
              return a.upsilon == b.upsilon && a.z == b.z;
            },
            [&](const PadicPower& a) {
              const auto& b = std::get<PadicPower>(y);
              if (a.p != b.p || a.omega != b.omega) return false;
              bool same = agrees(a.s, b.s);
              if (same && !(a.s.is_exact() && b.s.is_exact())) result.certain = false;
              return same;
            },
        },
        x);
  }
  if (!result.equal) result.witness = find_witness(x, y);
  return result;
}

bool in_ball(const Point& x, const Rational& radius) {
  if (radius < 0) fail(ErrorCode::InvalidArgument, "ball radius must be >= 0");
  return mag_cmp(abs_point(x), Magnitude::of(radius)) != Ordering::Greater;
}

bool in_open_set(const Point& x, const std::vector<OpenSetConstraint>& constraints) {
  for (const auto& c : constraints) {
    if (c.bound <= 0) fail(ErrorCode::InvalidArgument, "open-set bounds must be positive");
    Ordering o = mag_cmp(eval_point(x, c.poly), Magnitude::of(c.bound));
    if (c.less_than ? o != Ordering::Less : o != Ordering::Greater) return false;
  }
  return true;
}

}  // namespace berkline
