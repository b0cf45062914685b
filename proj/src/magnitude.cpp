#include "berkline/magnitude.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "berkline/error.hpp"

namespace berkline {

namespace {

class Mpfr {
 public:
  explicit Mpfr(int bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] enclosing the natural log of a magnitude.
struct LogInterval {
  explicit LogInterval(int bits) : lo(bits), hi(bits) {}
  Mpfr lo;
  Mpfr hi;
};

void log_rational_base(const Rational& b, LogInterval& out, int bits) {
  Mpfr num_lo(bits), num_hi(bits), den_lo(bits), den_hi(bits);
  mpfr_set_z(num_lo.get(), b.get_num_mpz_t(), MPFR_RNDD);
  mpfr_set_z(num_hi.get(), b.get_num_mpz_t(), MPFR_RNDU);
  mpfr_set_z(den_lo.get(), b.get_den_mpz_t(), MPFR_RNDD);
  mpfr_set_z(den_hi.get(), b.get_den_mpz_t(), MPFR_RNDU);
  mpfr_log(num_lo.get(), num_lo.get(), MPFR_RNDD);
  mpfr_log(num_hi.get(), num_hi.get(), MPFR_RNDU);
  mpfr_log(den_lo.get(), den_lo.get(), MPFR_RNDD);
  mpfr_log(den_hi.get(), den_hi.get(), MPFR_RNDU);
  mpfr_sub(out.lo.get(), num_lo.get(), den_hi.get(), MPFR_RNDD);
  mpfr_sub(out.hi.get(), num_hi.get(), den_lo.get(), MPFR_RNDU);
}

// [lo, hi] *= q, directed rounding.
void scale(LogInterval& iv, const Rational& q, int bits) {
  Mpfr a(bits), b(bits);
  if (q >= 0) {
    mpfr_mul_q(a.get(), iv.lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(b.get(), iv.hi.get(), q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(a.get(), iv.hi.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(b.get(), iv.lo.get(), q.get_mpq_t(), MPFR_RNDU);
  }
  mpfr_set(iv.lo.get(), a.get(), MPFR_RNDD);
  mpfr_set(iv.hi.get(), b.get(), MPFR_RNDU);
}

// Relative error allowance of Approx values.
constexpr double kApproxRelError = 0x1p-40;

void log_interval(const Magnitude& m, LogInterval& out, int bits) {
  switch (m.kind()) {
    case Magnitude::Kind::Zero:
      fail(ErrorCode::InvalidArgument, "log of zero magnitude");
    case Magnitude::Kind::Exp:
      if (m.euler_base()) {
        mpfr_set_q(out.lo.get(), m.exponent().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(out.hi.get(), m.exponent().get_mpq_t(), MPFR_RNDU);
        return;
      }
      log_rational_base(m.base(), out, bits);
      scale(out, m.exponent(), bits);
      return;
    case Magnitude::Kind::Approx: {
      Mpfr l2lo(bits), l2hi(bits), lm_lo(bits), lm_hi(bits);
      mpfr_const_log2(l2lo.get(), MPFR_RNDD);
      mpfr_const_log2(l2hi.get(), MPFR_RNDU);
      mpfr_set_d(lm_lo.get(), m.mantissa(), MPFR_RNDD);
      mpfr_set_d(lm_hi.get(), m.mantissa(), MPFR_RNDU);
      mpfr_log(lm_lo.get(), lm_lo.get(), MPFR_RNDD);
      mpfr_log(lm_hi.get(), lm_hi.get(), MPFR_RNDU);
      Mpfr e(bits);
      mpfr_set_si(e.get(), m.exp2(), MPFR_RNDN);
      if (m.exp2() >= 0) {
        mpfr_mul(l2lo.get(), l2lo.get(), e.get(), MPFR_RNDD);
        mpfr_mul(l2hi.get(), l2hi.get(), e.get(), MPFR_RNDU);
      } else {
        Mpfr t(bits);
        mpfr_mul(t.get(), l2hi.get(), e.get(), MPFR_RNDD);
        mpfr_mul(l2hi.get(), l2lo.get(), e.get(), MPFR_RNDU);
        mpfr_set(l2lo.get(), t.get(), MPFR_RNDD);
      }
      mpfr_add(out.lo.get(), lm_lo.get(), l2lo.get(), MPFR_RNDD);
      mpfr_add(out.hi.get(), lm_hi.get(), l2hi.get(), MPFR_RNDU);
      // widen by the representation error: |ln(1 +- 2^-40)| < 2^-39
      mpfr_sub_d(out.lo.get(), out.lo.get(), 2 * kApproxRelError, MPFR_RNDD);
      mpfr_add_d(out.hi.get(), out.hi.get(), 2 * kApproxRelError, MPFR_RNDU);
      return;
    }
  }
}

constexpr int kWorkBits = 128;

// Natural log of a nonzero magnitude, to kWorkBits, round-to-nearest midpoint.
void log_value(const Magnitude& m, Mpfr& out) {
  LogInterval iv(kWorkBits);
  log_interval(m, iv, kWorkBits);
  mpfr_add(out.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
  mpfr_div_2ui(out.get(), out.get(), 1, MPFR_RNDN);
}

Magnitude from_log(Mpfr& ln) {
  Mpfr x(kWorkBits), l2(kWorkBits);
  mpfr_const_log2(l2.get(), MPFR_RNDN);
  mpfr_div(x.get(), ln.get(), l2.get(), MPFR_RNDN);
  Mpfr fl(kWorkBits);
  mpfr_floor(fl.get(), x.get());
  if (!mpfr_fits_slong_p(fl.get(), MPFR_RNDN)) fail(ErrorCode::PrecisionExhausted, "magnitude exponent out of range");
  long k = mpfr_get_si(fl.get(), MPFR_RNDN);
  mpfr_sub(x.get(), x.get(), fl.get(), MPFR_RNDN);
  mpfr_exp2(x.get(), x.get(), MPFR_RNDN);
  // 2^frac in [1, 2)
  return Magnitude::approx(mpfr_get_d(x.get(), MPFR_RNDN) / 2.0, k + 1);
}

// Strips perfect powers: returns (root, k) with base = root^k and k maximal.
std::pair<Rational, Integer> reduce_base(const Rational& base) {
  Integer num = base.get_num();
  Integer den = base.get_den();
  Integer k = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t bits = std::max(mpz_sizeinbase(num.get_mpz_t(), 2), mpz_sizeinbase(den.get_mpz_t(), 2));
    for (std::int64_t q : primes_up_to(static_cast<std::int64_t>(bits))) {
      Integer rn, rd;
      bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(q)) != 0;
      if (!exact_n) continue;
      bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(q)) != 0;
      if (!exact_d) continue;
      num = rn;
      den = rd;
      k *= q;
      changed = true;
      break;
    }
  }
  return {make_rational(num, den), k};
}

}  // namespace

Magnitude Magnitude::one() {
  Magnitude m;
  m.kind_ = Kind::Exp;
  return m;
}

Magnitude Magnitude::exp(const Rational& base, const Rational& exponent) {
  Rational b = base;
  Rational e = exponent;
  b.canonicalize();
  e.canonicalize();
  if (b <= 0) fail(ErrorCode::InvalidArgument, "magnitude base must be positive");
  if (b == 1 || e == 0) return one();
  if (b < 1) {
    b = 1 / b;
    e = -e;
  }
  auto [root, k] = reduce_base(b);
  Magnitude m;
  m.kind_ = Kind::Exp;
  m.base_ = root;
  m.exponent_ = e * Rational(k);
  return m;
}

Magnitude Magnitude::euler(const Rational& exponent) {
  if (exponent == 0) return one();
  Magnitude m;
  m.kind_ = Kind::Exp;
  m.euler_ = true;
  m.base_ = 0;
  m.exponent_ = exponent;
  m.exponent_.canonicalize();
  return m;
}

Magnitude Magnitude::of(const Rational& q) {
  if (q == 0) return zero();
  return exp(abs(q), Rational(1));
}

Magnitude Magnitude::approx(double value) {
  if (!(value >= 0) || std::isinf(value)) fail(ErrorCode::InvalidArgument, "approximate magnitude must be finite and >= 0");
  if (value == 0) return zero();
  int e = 0;
  double mant = std::frexp(value, &e);
  return approx(mant, e);
}

Magnitude Magnitude::approx(double mantissa, std::int64_t exp2) {
  if (!(mantissa > 0) || std::isinf(mantissa)) fail(ErrorCode::InvalidArgument, "approximate magnitude must be positive");
  int e = 0;
  double mant = std::frexp(mantissa, &e);
  Magnitude m;
  m.kind_ = Kind::Approx;
  m.mantissa_ = mant;
  m.exp2_ = exp2 + e;
  return m;
}

double Magnitude::to_double() const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Approx: return std::ldexp(mantissa_, static_cast<int>(std::clamp<std::int64_t>(exp2_, -100000, 100000)));
    case Kind::Exp: {
      if (is_one()) return 1.0;
      Mpfr ln(kWorkBits);
      log_value(*this, ln);
      mpfr_exp(ln.get(), ln.get(), MPFR_RNDN);
      return mpfr_get_d(ln.get(), MPFR_RNDN);
    }
  }
  return 0.0;
}

long double Magnitude::log2() const {
  switch (kind_) {
    case Kind::Zero: return -std::numeric_limits<long double>::infinity();
    case Kind::Approx: return std::log2(static_cast<long double>(mantissa_)) + static_cast<long double>(exp2_);
    case Kind::Exp: {
      if (is_one()) return 0.0L;
      Mpfr ln(kWorkBits), l2(kWorkBits);
      log_value(*this, ln);
      mpfr_const_log2(l2.get(), MPFR_RNDN);
      mpfr_div(ln.get(), ln.get(), l2.get(), MPFR_RNDN);
      return mpfr_get_ld(ln.get(), MPFR_RNDN);
    }
  }
  return 0.0L;
}

std::string Magnitude::str() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Exp:
      if (is_one()) return "1";
      return (euler_ ? std::string("e") : to_string(base_)) + "^(" + to_string(exponent_) + ")";
    case Kind::Approx: {
      std::ostringstream os;
      os.precision(17);
      double d = to_double();
      if (d == 0 || std::isinf(d)) {
        os << mantissa_ << "*2^" << exp2_;
      } else {
        os << d;
      }
      return os.str();
    }
  }
  return "?";
}

bool operator==(const Magnitude& a, const Magnitude& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Magnitude::Kind::Zero: return true;
    case Magnitude::Kind::Exp: return a.euler_ == b.euler_ && a.base_ == b.base_ && a.exponent_ == b.exponent_;
    case Magnitude::Kind::Approx: return a.mantissa_ == b.mantissa_ && a.exp2_ == b.exp2_;
  }
  return false;
}

Magnitude mag_mul(const Magnitude& a, const Magnitude& b) {
  if (a.is_zero() || b.is_zero()) return Magnitude::zero();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.kind() == Magnitude::Kind::Exp && b.kind() == Magnitude::Kind::Exp && a.euler_base() == b.euler_base() &&
      a.base() == b.base()) {
    Rational e = a.exponent() + b.exponent();
    return a.euler_base() ? Magnitude::euler(e) : Magnitude::exp(a.base(), e);
  }
  if (a.kind() == Magnitude::Kind::Approx && b.kind() == Magnitude::Kind::Approx) {
    return Magnitude::approx(a.mantissa() * b.mantissa(), a.exp2() + b.exp2());
  }
  Mpfr la(kWorkBits), lb(kWorkBits);
  log_value(a, la);
  log_value(b, lb);
  mpfr_add(la.get(), la.get(), lb.get(), MPFR_RNDN);
  return from_log(la);
}

Magnitude mag_pow(const Magnitude& a, const Rational& e) {
  if (e < 0) fail(ErrorCode::InvalidArgument, "mag_pow exponent must be >= 0");
  if (a.is_zero()) {
    if (e == 0) fail(ErrorCode::ZeroToZeroPower, "Zero^0 is undefined");
    return Magnitude::zero();
  }
  if (e == 0) return Magnitude::one();
  if (a.kind() == Magnitude::Kind::Exp) {
    if (a.is_one()) return a;
    return a.euler_base() ? Magnitude::euler(a.exponent() * e) : Magnitude::exp(a.base(), a.exponent() * e);
  }
  Mpfr la(kWorkBits);
  log_value(a, la);
  mpfr_mul_q(la.get(), la.get(), e.get_mpq_t(), MPFR_RNDN);
  return from_log(la);
}

Magnitude mag_inv(const Magnitude& a) {
  switch (a.kind()) {
    case Magnitude::Kind::Zero: fail(ErrorCode::InvalidArgument, "inverse of zero magnitude");
    case Magnitude::Kind::Exp:
      if (a.is_one()) return a;
      return a.euler_base() ? Magnitude::euler(-a.exponent()) : Magnitude::exp(a.base(), -a.exponent());
    case Magnitude::Kind::Approx: return Magnitude::approx(1.0 / a.mantissa(), -a.exp2());
  }
  return a;
}

Ordering mag_cmp(const Magnitude& a, const Magnitude& b, int max_bits) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return Ordering::Equal;
    return a.is_zero() ? Ordering::Less : Ordering::Greater;
  }
  if (a == b) return Ordering::Equal;
  auto from_int = [](int c) { return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal); };
  bool a_exact = a.kind() == Magnitude::Kind::Exp;
  bool b_exact = b.kind() == Magnitude::Kind::Exp;
  if (a_exact && b_exact) {
    if (a.is_one() && b.is_one()) return Ordering::Equal;
    // base > 1, so the sign of the exponent orders against 1
    if (a.is_one()) return from_int(-sgn(b.exponent()));
    if (b.is_one()) return from_int(sgn(a.exponent()));
    if (a.euler_base() == b.euler_base() && a.base() == b.base()) return from_int(cmp(a.exponent(), b.exponent()));
    // distinct reduced bases: equality would force both exponents to vanish
    if (sgn(a.exponent()) != sgn(b.exponent())) return from_int(sgn(a.exponent()));
  }
  for (int bits = 64; bits <= std::max(64, max_bits); bits *= 2) {
    LogInterval ia(bits), ib(bits);
    log_interval(a, ia, bits);
    log_interval(b, ib, bits);
    if (mpfr_less_p(ia.hi.get(), ib.lo.get())) return Ordering::Less;
    if (mpfr_greater_p(ia.lo.get(), ib.hi.get())) return Ordering::Greater;
    if (!a_exact || !b_exact) {
      // an approximate operand's own error dominates once intervals overlap
      if (bits >= max_bits) break;
    }
  }
  fail(ErrorCode::PrecisionExhausted,
       "cannot order " + a.str() + " and " + b.str() + " within " + std::to_string(max_bits) + " bits");
}

const Magnitude& mag_max(const Magnitude& a, const Magnitude& b) {
  return mag_cmp(a, b) == Ordering::Less ? b : a;
}

bool mag_close(const Magnitude& a, const Magnitude& b, double rel) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  long double d = a.log2() - b.log2();
  // |a/b - 1| <= rel  <=>  |log2(a/b)| <~ rel / ln 2 for small rel
  return std::fabs(static_cast<double>(d)) <= rel / std::log(2.0);
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

}  // namespace berkline
