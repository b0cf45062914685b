#include "berkline/padic.hpp"

#include <algorithm>
#include <limits>

#include "berkline/error.hpp"

namespace berkline {

namespace {

void check_prime(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

void check_same_prime(const PadicNumber& a, const PadicNumber& b) {
  if (a.prime() != b.prime()) {
    fail(ErrorCode::InvalidArgument,
         "mixed primes " + std::to_string(a.prime()) + " and " + std::to_string(b.prime()));
  }
}

Integer unit_of_rational(std::int64_t p, const Rational& q, std::int64_t v, int k) {
  Integer pk = ipow(p, static_cast<std::uint64_t>(k));
  Integer num = q.get_num();
  Integer den = q.get_den();
  Integer pv = ipow(p, static_cast<std::uint64_t>(v >= 0 ? v : -v));
  if (v >= 0) {
    num /= pv;
  } else {
    den /= pv;
  }
  return mod(num * mod_inverse(mod(den, pk), pk), pk);
}

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

}  // namespace

PadicNumber PadicNumber::from_rational(std::int64_t p, const Rational& q, int digits) {
  check_prime(p);
  if (digits < 1) fail(ErrorCode::InvalidArgument, "p-adic precision must be >= 1");
  PadicNumber x;
  x.p_ = p;
  x.digits_ = digits;
  if (q == 0) return x;
  x.state_ = State::Finite;
  x.v_ = padic_valuation(q, p);
  x.unit_ = unit_of_rational(p, q, x.v_, digits);
  x.exact_ = q;
  return x;
}

PadicNumber PadicNumber::from_unit(std::int64_t p, std::int64_t v, const Integer& unit, int digits) {
  check_prime(p);
  if (digits < 1) fail(ErrorCode::InvalidArgument, "p-adic precision must be >= 1");
  if (unit % p == 0) fail(ErrorCode::InvalidArgument, "unit part divisible by p");
  PadicNumber x;
  x.p_ = p;
  x.state_ = State::Finite;
  x.v_ = v;
  x.digits_ = digits;
  x.unit_ = mod(unit, ipow(p, static_cast<std::uint64_t>(digits)));
  return x;
}

PadicNumber PadicNumber::zero(std::int64_t p) {
  check_prime(p);
  PadicNumber x;
  x.p_ = p;
  return x;
}

PadicNumber PadicNumber::indeterminate(std::int64_t p, std::int64_t absolute_precision) {
  check_prime(p);
  PadicNumber x;
  x.p_ = p;
  x.state_ = State::Indeterminate;
  x.v_ = absolute_precision;
  x.digits_ = 0;
  return x;
}

std::int64_t PadicNumber::valuation() const {
  if (state_ == State::Indeterminate) {
    fail(ErrorCode::IndeterminateValuation, "valuation undetermined: value is " + str());
  }
  if (state_ == State::Zero) fail(ErrorCode::InvalidArgument, "valuation of zero");
  return v_;
}

ExtRational PadicNumber::valuation_ext() const {
  if (state_ == State::Zero) return ExtRational::infinity();
  return ExtRational(valuation());
}

std::int64_t PadicNumber::absolute_precision() const {
  switch (state_) {
    case State::Zero: return kUnbounded;
    case State::Indeterminate: return v_;
    case State::Finite: return exact_ ? kUnbounded : v_ + digits_;
  }
  return 0;
}

Integer PadicNumber::unit_mod(int k) const {
  if (state_ != State::Finite) fail(ErrorCode::IndeterminateValuation, "unit of " + str());
  if (k <= 0) return 0;
  if (exact_) return unit_of_rational(p_, *exact_, v_, k);
  if (k > digits_) fail(ErrorCode::IndeterminateValuation, "unit digits beyond known precision");
  return mod(unit_, ipow(p_, static_cast<std::uint64_t>(k)));
}

std::string PadicNumber::str() const {
  switch (state_) {
    case State::Zero: return "0";
    case State::Indeterminate: return "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
    case State::Finite:
      return std::to_string(p_) + "^" + std::to_string(v_) + " * (" + to_string(unit_) + " mod " +
             std::to_string(p_) + "^" + std::to_string(digits_) + ")";
  }
  return "?";
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  check_same_prime(a, b);
  const std::int64_t p = a.p_;
  const int digits = std::min(a.digits_ > 0 ? a.digits_ : b.digits_, b.digits_ > 0 ? b.digits_ : a.digits_);
  if (a.is_exact() && b.is_exact()) {
    Rational qa = a.exact_ ? *a.exact_ : Rational(0);
    Rational qb = b.exact_ ? *b.exact_ : Rational(0);
    return PadicNumber::from_rational(p, qa + qb, std::max(digits, 1));
  }
  const std::int64_t A = std::min(a.absolute_precision(), b.absolute_precision());
  std::int64_t vmin = kUnbounded;
  for (const PadicNumber* x : {&a, &b}) {
    if (x->state_ == PadicNumber::State::Finite && x->v_ < A) vmin = std::min(vmin, x->v_);
  }
  if (vmin == kUnbounded) return PadicNumber::indeterminate(p, A);
  const int width = static_cast<int>(A - vmin);
  Integer s = 0;
  for (const PadicNumber* x : {&a, &b}) {
    if (x->state_ != PadicNumber::State::Finite || x->v_ >= A) continue;
    s += x->unit_mod(static_cast<int>(A - x->v_)) * ipow(p, static_cast<std::uint64_t>(x->v_ - vmin));
  }
  s = mod(s, ipow(p, static_cast<std::uint64_t>(width)));
  if (s == 0) return PadicNumber::indeterminate(p, A);
  std::int64_t t = padic_valuation(s, p);
  PadicNumber r;
  r.p_ = p;
  r.state_ = PadicNumber::State::Finite;
  r.v_ = vmin + t;
  r.digits_ = static_cast<int>(A - r.v_);
  r.unit_ = mod(Integer(s / ipow(p, static_cast<std::uint64_t>(t))), ipow(p, static_cast<std::uint64_t>(r.digits_)));
  return r;
}

PadicNumber operator-(const PadicNumber& a) {
  PadicNumber r = a;
  if (a.state_ != PadicNumber::State::Finite) return r;
  if (a.exact_) return PadicNumber::from_rational(a.p_, -*a.exact_, a.digits_);
  r.unit_ = mod(Integer(-a.unit_), ipow(a.p_, static_cast<std::uint64_t>(a.digits_)));
  return r;
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  check_same_prime(a, b);
  const std::int64_t p = a.p_;
  if (a.is_zero() || b.is_zero()) return PadicNumber::zero(p);
  if (a.is_exact() && b.is_exact()) {
    return PadicNumber::from_rational(p, *a.exact_ * *b.exact_, std::min(a.digits_, b.digits_));
  }
  if (a.is_indeterminate() || b.is_indeterminate()) return PadicNumber::indeterminate(p, a.v_ + b.v_);
  int digits = a.exact_ ? b.digits_ : (b.exact_ ? a.digits_ : std::min(a.digits_, b.digits_));
  PadicNumber r;
  r.p_ = p;
  r.state_ = PadicNumber::State::Finite;
  r.v_ = a.v_ + b.v_;
  r.digits_ = digits;
  r.unit_ = mod(Integer(a.unit_mod(digits) * b.unit_mod(digits)), ipow(p, static_cast<std::uint64_t>(digits)));
  return r;
}

PadicNumber PadicNumber::inverse() const {
  if (state_ == State::Zero) fail(ErrorCode::InvalidArgument, "inverse of zero");
  if (state_ == State::Indeterminate) fail(ErrorCode::IndeterminateValuation, "inverse of " + str());
  if (exact_) return from_rational(p_, 1 / *exact_, digits_);
  PadicNumber r = *this;
  r.v_ = -v_;
  r.unit_ = mod_inverse(unit_, ipow(p_, static_cast<std::uint64_t>(digits_)));
  return r;
}

bool agrees(const PadicNumber& a, const PadicNumber& b) {
  PadicNumber d = a - b;
  return d.is_zero() || d.is_indeterminate();
}

Integer residue_bracket(std::int64_t q, const Integer& m, const Integer& n) {
  check_prime(q);
  if (n == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  Integer Q(static_cast<long>(q));
  if (n % Q == 0) {
    fail(ErrorCode::DivisorCollision, std::to_string(q) + " divides the denominator " + to_string(n));
  }
  return mod(Integer(mod(m, Q) * mod_inverse(mod(n, Q), Q)), Q);
}

Integer residue_bracket(std::int64_t q, const Rational& x) { return residue_bracket(q, x.get_num(), x.get_den()); }

}  // namespace berkline
