#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "berkline/magnitude.hpp"
#include "berkline/padic.hpp"
#include "berkline/rational.hpp"

namespace berkline {

/// Q with the trivial absolute value.
struct FieldQ0 {
  friend bool operator==(const FieldQ0&, const FieldQ0&) = default;
};
/// R with |x|^upsilon, 0 < upsilon <= 1.
struct FieldRv {
  Rational upsilon;
  friend bool operator==(const FieldRv&, const FieldRv&) = default;
};
/// Q_p with |x|_p^omega, omega > 0.
struct FieldQpw {
  std::int64_t p;
  Rational omega;
  friend bool operator==(const FieldQpw&, const FieldQpw&) = default;
};
/// F_p with the trivial absolute value.
struct FieldFp {
  std::int64_t p;
  friend bool operator==(const FieldFp&, const FieldFp&) = default;
};

using MinimalFieldTag = std::variant<FieldQ0, FieldRv, FieldQpw, FieldFp>;

/// Validates parameter ranges; throws InvalidArgument.
void validate(const MinimalFieldTag& tag);
std::string to_string(const MinimalFieldTag& tag);

/// |x| in the field. For Fp the rational is reduced mod p (DivisorCollision if
/// p divides its denominator).
Magnitude abs_value(const MinimalFieldTag& tag, const Rational& x);
/// Qpw only. Throws IndeterminateValuation when x cannot be told from zero.
Magnitude abs_value(const FieldQpw& tag, const PadicNumber& x);
/// Fp residues: Zero for 0 mod p, else 1.
Magnitude abs_residue(const FieldFp& tag, const Integer& residue);

}  // namespace berkline
