#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "berkline/rational.hpp"

namespace berkline {

inline constexpr int kDefaultPadicDigits = 32;

/// An element of Q_p known to finite precision: p^v * unit, with the unit
/// known modulo p^N (N is the relative precision).
///
/// Values built from rationals keep their exact value; arithmetic between
/// exact values stays exact. Once an inexact operand is involved the usual
/// fixed-precision rules apply:
///   mul: valuations add, N = min of the operands' N.
///   add: the absolute precision (v + N) of the result is the minimum over the
///        operands; cancellation lowers N, and total cancellation yields an
///        indeterminate O(p^A).
///   inv: valuation negates, N unchanged.
class PadicNumber {
 public:
  enum class State { Zero, Finite, Indeterminate };

  PadicNumber() = default;

  static PadicNumber from_rational(std::int64_t p, const Rational& q, int digits = kDefaultPadicDigits);
  /// p^v * unit, unit taken mod p^digits. The value is treated as inexact.
  static PadicNumber from_unit(std::int64_t p, std::int64_t v, const Integer& unit, int digits = kDefaultPadicDigits);
  static PadicNumber zero(std::int64_t p);
  /// The class O(p^absolute_precision): some value whose digits are all unknown.
  static PadicNumber indeterminate(std::int64_t p, std::int64_t absolute_precision);

  std::int64_t prime() const noexcept { return p_; }
  State state() const noexcept { return state_; }
  bool is_zero() const noexcept { return state_ == State::Zero; }
  bool is_indeterminate() const noexcept { return state_ == State::Indeterminate; }
  bool is_exact() const noexcept { return state_ == State::Zero || exact_.has_value(); }
  const std::optional<Rational>& exact() const noexcept { return exact_; }

  /// Throws IndeterminateValuation when the value cannot be distinguished from zero.
  std::int64_t valuation() const;
  /// +inf for the exact zero; throws IndeterminateValuation when indeterminate.
  ExtRational valuation_ext() const;
  /// Unit mod p^N, in [0, p^N).
  const Integer& unit() const noexcept { return unit_; }
  /// Relative precision N (known unit digits).
  int digits() const noexcept { return digits_; }
  /// v + N; for an indeterminate value the exponent of O(p^k).
  std::int64_t absolute_precision() const;

  /// Unit mod p^k; for exact values any k, otherwise k <= digits().
  Integer unit_mod(int k) const;

  /// True when the two values agree modulo p^k where k is the smaller
  /// absolute precision (exact values agree only when equal).
  friend bool agrees(const PadicNumber& a, const PadicNumber& b);

  std::string str() const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  PadicNumber inverse() const;
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

 private:
  std::int64_t p_ = 2;
  State state_ = State::Zero;
  std::int64_t v_ = 0;  // valuation, or k of O(p^k) when indeterminate
  Integer unit_ = 0;
  int digits_ = kDefaultPadicDigits;
  std::optional<Rational> exact_;
};

/// The residue r with n*r = m mod q. Throws DivisorCollision when q | n.
Integer residue_bracket(std::int64_t q, const Integer& m, const Integer& n);
/// [x]_q for a rational x whose denominator is prime to q.
Integer residue_bracket(std::int64_t q, const Rational& x);

}  // namespace berkline
