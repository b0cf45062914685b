#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berkline/point.hpp"

namespace berkline {

/// Exponent sequences omega_i / upsilon_i: c, c/i, c*i or c*q^i (i >= 1).
struct GrowthTerm {
  enum class Form { Constant, OverIndex, TimesIndex, Geometric };
  Form form = Form::Constant;
  Rational c = 1;
  Rational q = 1;  // Geometric only

  Rational at(std::int64_t i) const;
};

/// p_i: a fixed prime, or the i-th prime.
struct PrimeSequence {
  bool enumerate = false;
  std::int64_t q = 2;

  std::int64_t at(std::int64_t i) const;
};

/// c * b^(slope*i + offset), where b is an integer >= 2 or the field prime p_i.
struct ElementTail {
  Rational c = 1;
  bool field_prime = false;
  Integer base = 2;
  std::int64_t slope = 1;
  std::int64_t offset = 0;
};

/// The element formula: an optional constant plus an optional tail, with
/// explicit values overriding the first few indices.
struct ElementFormula {
  std::optional<Rational> constant;
  std::optional<ElementTail> tail;
  std::vector<Rational> prefix;

  bool has_closed_form() const { return constant.has_value() || tail.has_value(); }
};

struct SequenceDescriptor {
  /// Real: (R^upsilon_i, t_i). Padic: (Q_{p_i}^omega_i, s_i). Finite: (F_{p_i}, [s_i]).
  enum class Family { Real, Padic, Finite };
  Family family = Family::Padic;
  PrimeSequence prime;
  GrowthTerm exponent;
  ElementFormula element;
};

/// The element at index i (i >= 1) as an exact rational.
Rational element_at(const SequenceDescriptor& seq, std::int64_t i);
/// The i-th point of the sequence.
Point instantiate(const SequenceDescriptor& seq, std::int64_t i, int digits = kDefaultPadicDigits);

/// Decides convergence in the minimal-field subspace to a trivially valued
/// rational or a residue in some F_q, from the symbolic data alone.
/// Throws UnsupportedDescriptor when the grammar cannot settle the limit.
bool converges_to(const SequenceDescriptor& seq, const Point& target);

struct LimitReport {
  double max_deviation = 0.0;
  std::size_t worst_index = 0;  // 1-based index into the sequence
  std::size_t worst_poly = 0;
  std::size_t tail_start = 0;  // 1-based
  bool within_tolerance = true;
};

/// max |lambda_i(poly) - lambda(poly)| over the tail of the finite sequence.
/// The tail is the last `tail` terms (all terms when tail is 0 or too large).
LimitReport numeric_limit_check(const std::vector<Point>& seq, const Point& target, const std::vector<IntPoly>& polys,
                                double tol, std::size_t tail = 20);

}  // namespace berkline
