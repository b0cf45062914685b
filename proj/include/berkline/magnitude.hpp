#pragma once

#include <cstdint>
#include <string>

#include "berkline/rational.hpp"

namespace berkline {

/// A seminorm value: zero, an exact power base^exponent, or a binary float.
///
/// Exact values are normalized: the base is > 1 and not a perfect power of a
/// smaller rational, and every exact value equal to 1 is stored as base 1,
/// exponent 0. Approximate values are kept as mantissa * 2^exp2 with the
/// mantissa in [0.5, 1), so very small magnitudes do not underflow.
class Magnitude {
 public:
  enum class Kind { Zero, Exp, Approx };

  Magnitude() = default;  // zero

  static Magnitude zero() { return Magnitude(); }
  static Magnitude one();
  /// base^exponent for a rational base > 0.
  static Magnitude exp(const Rational& base, const Rational& exponent);
  /// e^exponent.
  static Magnitude euler(const Rational& exponent);
  /// |q| as an exact magnitude.
  static Magnitude of(const Rational& q);
  static Magnitude approx(double value);
  static Magnitude approx(double mantissa, std::int64_t exp2);

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  bool is_exact() const noexcept { return kind_ != Kind::Approx; }
  bool is_one() const noexcept { return kind_ == Kind::Exp && exponent_ == 0; }

  /// Exact variants only.
  bool euler_base() const noexcept { return euler_; }
  const Rational& base() const noexcept { return base_; }
  const Rational& exponent() const noexcept { return exponent_; }
  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exp2() const noexcept { return exp2_; }

  /// Nearest double; may overflow to inf or underflow to 0.
  double to_double() const;
  /// log2 of the value, -inf for zero.
  long double log2() const;

  std::string str() const;

  /// Structural equality of representations.
  friend bool operator==(const Magnitude& a, const Magnitude& b);

 private:
  Kind kind_ = Kind::Zero;
  bool euler_ = false;
  Rational base_{1};
  Rational exponent_{0};
  double mantissa_ = 0.0;
  std::int64_t exp2_ = 0;
};

enum class Ordering { Less, Equal, Greater };

inline constexpr int kDefaultCompareBits = 128;

Magnitude mag_mul(const Magnitude& a, const Magnitude& b);
/// a^e for rational e >= 0. Throws ZeroToZeroPower for Zero^0.
Magnitude mag_pow(const Magnitude& a, const Rational& e);
/// 1/a for a != Zero.
Magnitude mag_inv(const Magnitude& a);
/// Throws PrecisionExhausted when max_bits of interval refinement cannot decide.
Ordering mag_cmp(const Magnitude& a, const Magnitude& b, int max_bits = kDefaultCompareBits);

inline bool mag_less(const Magnitude& a, const Magnitude& b) { return mag_cmp(a, b) == Ordering::Less; }
inline bool mag_le(const Magnitude& a, const Magnitude& b) { return mag_cmp(a, b) != Ordering::Greater; }
const Magnitude& mag_max(const Magnitude& a, const Magnitude& b);

/// |a - b| <= rel * max(a, b), computed in floating point. Zero is close only to Zero.
bool mag_close(const Magnitude& a, const Magnitude& b, double rel);

std::string to_string(Ordering o);

}  // namespace berkline
