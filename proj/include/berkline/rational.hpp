#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace berkline {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "3", "-7/4", "0.25" into a canonical rational. Throws InvalidArgument.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& z);
/// Canonical "n" or "n/d" form.
std::string to_string(const Rational& q);

Rational make_rational(const Integer& num, const Integer& den);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

bool is_prime(std::int64_t n);
/// The i-th prime, 1-based: nth_prime(1) == 2.
std::int64_t nth_prime(std::int64_t index);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

/// v_p of a nonzero integer.
std::int64_t padic_valuation(const Integer& z, std::int64_t p);
/// v_p of a nonzero rational.
std::int64_t padic_valuation(const Rational& q, std::int64_t p);

Integer ipow(const Integer& base, std::uint64_t exponent);
Integer ipow(std::int64_t base, std::uint64_t exponent);
/// b^e for integer e of either sign.
Rational rpow(const Rational& base, std::int64_t exponent);

/// Inverse of a mod m; a must be a unit mod m.
Integer mod_inverse(const Integer& a, const Integer& m);
/// Canonical residue in [0, m).
Integer mod(const Integer& a, const Integer& m);

std::int64_t to_int64(const Integer& z);

/// A valuation-like quantity: a rational or +infinity.
class ExtRational {
 public:
  ExtRational() : infinite_(true) {}
  ExtRational(Rational value) : infinite_(false), value_(std::move(value)) {}  // NOLINT
  ExtRational(std::int64_t value) : infinite_(false), value_(value) {}         // NOLINT

  static ExtRational infinity() { return ExtRational(); }

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);

  std::string str() const;

 private:
  bool infinite_;
  Rational value_;
};

}  // namespace berkline
