#include "berkline/rational.hpp"

#include <algorithm>
#include <cctype>

#include "berkline/error.hpp"

namespace berkline {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroToZeroPower: return "ZeroToZeroPower";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::IndeterminateValuation: return "IndeterminateValuation";
    case ErrorCode::DivisorCollision: return "DivisorCollision";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::UnsupportedDescriptor: return "UnsupportedDescriptor";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::LiftingFailed: return "LiftingFailed";
  }
  return "Unknown";
}

bool is_precision_error(ErrorCode code) {
  return code == ErrorCode::PrecisionExhausted ||
         code == ErrorCode::IndeterminateValuation ||
         code == ErrorCode::TruncationInsufficient ||
         code == ErrorCode::IllConditioned;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) fail(ErrorCode::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  Integer z;
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  if (z.set_str(buf, 10) != 0) fail(ErrorCode::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  return z;
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) fail(ErrorCode::InvalidArgument, "empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool negative = s.front() == '-';
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') body.remove_prefix(1);
    dot = body.find('.');
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      fail(ErrorCode::InvalidArgument, "not a rational: '" + std::string(text) + "'");
    }
    Integer num = parse_integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    Rational q = make_rational(num, ipow(10, frac.size()));
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  Integer z(static_cast<long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::int64_t nth_prime(std::int64_t index) {
  if (index < 1) fail(ErrorCode::InvalidArgument, "prime index must be >= 1");
  std::int64_t count = 0;
  for (std::int64_t n = 2;; ++n) {
    if (is_prime(n) && ++count == index) return n;
  }
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::int64_t padic_valuation(const Integer& z, std::int64_t p) {
  if (z == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
  Integer prime(static_cast<long>(p));
  Integer rest = z;
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

std::int64_t padic_valuation(const Rational& q, std::int64_t p) {
  if (q == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
  return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p);
}

Integer ipow(const Integer& base, std::uint64_t exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Integer ipow(std::int64_t base, std::uint64_t exponent) {
  return ipow(Integer(static_cast<long>(base)), exponent);
}

Rational rpow(const Rational& base, std::int64_t exponent) {
  if (exponent >= 0) {
    return make_rational(ipow(base.get_num(), exponent), ipow(base.get_den(), exponent));
  }
  if (base == 0) fail(ErrorCode::InvalidArgument, "negative power of zero");
  auto e = static_cast<std::uint64_t>(-exponent);
  return make_rational(ipow(base.get_den(), e), ipow(base.get_num(), e));
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    fail(ErrorCode::InvalidArgument, "not invertible modulo " + to_string(m));
  }
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorCode::InvalidArgument, "integer out of range: " + to_string(z));
  return z.get_si();
}

const Rational& ExtRational::value() const {
  if (infinite_) fail(ErrorCode::InvalidArgument, "value() of infinite valuation");
  return value_;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return ExtRational::infinity();
  return ExtRational(Rational(a.value_ + b.value_));
}

std::string ExtRational::str() const { return infinite_ ? "inf" : to_string(value_); }

}  // namespace berkline
