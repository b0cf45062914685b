#include "berkline/fields.hpp"

#include "berkline/error.hpp"
#include "overloaded.hpp"

namespace berkline {

using detail::overloaded;

void validate(const MinimalFieldTag& tag) {
  std::visit(overloaded{
                 [](const FieldQ0&) {},
                 [](const FieldRv& f) {
                   if (f.upsilon <= 0 || f.upsilon > 1) fail(ErrorCode::InvalidArgument, "upsilon must lie in (0,1]");
                 },
                 [](const FieldQpw& f) {
                   if (!is_prime(f.p)) fail(ErrorCode::InvalidArgument, std::to_string(f.p) + " is not prime");
                   if (f.omega <= 0) fail(ErrorCode::InvalidArgument, "omega must be > 0");
                 },
                 [](const FieldFp& f) {
                   if (!is_prime(f.p)) fail(ErrorCode::InvalidArgument, std::to_string(f.p) + " is not prime");
                 },
             },
             tag);
}

std::string to_string(const MinimalFieldTag& tag) {
  return std::visit(overloaded{
                        [](const FieldQ0&) { return std::string("Q0"); },
                        [](const FieldRv& f) { return "R^" + to_string(f.upsilon); },
                        [](const FieldQpw& f) { return "Q_" + std::to_string(f.p) + "^" + to_string(f.omega); },
                        [](const FieldFp& f) { return "F_" + std::to_string(f.p); },
                    },
                    tag);
}

Magnitude abs_value(const MinimalFieldTag& tag, const Rational& x) {
  validate(tag);
  return std::visit(overloaded{
                        [&](const FieldQ0&) { return x == 0 ? Magnitude::zero() : Magnitude::one(); },
                        [&](const FieldRv& f) { return mag_pow(Magnitude::of(x), f.upsilon); },
                        [&](const FieldQpw& f) {
                          if (x == 0) return Magnitude::zero();
                          return Magnitude::exp(Rational(f.p), Rational(-f.omega * padic_valuation(x, f.p)));
                        },
                        [&](const FieldFp& f) { return abs_residue(f, residue_bracket(f.p, x)); },
                    },
                    tag);
}

Magnitude abs_value(const FieldQpw& tag, const PadicNumber& x) {
  validate(tag);
  if (x.prime() != tag.p) fail(ErrorCode::InvalidArgument, "p-adic number over the wrong prime");
  if (x.is_zero()) return Magnitude::zero();
  return Magnitude::exp(Rational(tag.p), Rational(-tag.omega * x.valuation()));
}

Magnitude abs_residue(const FieldFp& tag, const Integer& residue) {
  return mod(residue, Integer(static_cast<long>(tag.p))) == 0 ? Magnitude::zero() : Magnitude::one();
}

}  // namespace berkline
