#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "berkline/fields.hpp"
#include "berkline/gaussian.hpp"
#include "berkline/magnitude.hpp"
#include "berkline/padic.hpp"
#include "berkline/polynomial.hpp"

namespace berkline {

/// r in Q with the trivial absolute value.
struct TrivialRational {
  Rational r;
};
/// A root of an irreducible polynomial in a trivially valued field. The
/// minimal polynomial is primitive with positive leading coefficient.
struct TrivialAlgebraic {
  IntPoly minpoly;
};
/// The class of t in Q(t) with the trivial absolute value.
struct GenericTrivial {};
/// A residue in F_p.
struct TrivialFinite {
  std::int64_t p;
  Integer residue;  // in [0, p)
};
/// t in R with |x|^upsilon.
struct RealPower {
  Rational upsilon;
  Rational t;
};
/// z in C with |x|^upsilon, stored with Im z >= 0.
struct ComplexFold {
  Rational upsilon;
  GaussianRational z;
};
/// s in Q_p with |x|_p^omega.
struct PadicPower {
  std::int64_t p;
  Rational omega;
  PadicNumber s;
};

using Point = std::variant<TrivialRational, TrivialAlgebraic, GenericTrivial, TrivialFinite, RealPower, ComplexFold,
                           PadicPower>;

Point make_trivial_rational(const Rational& r);
/// Validates irreducibility and normalizes to the primitive form.
Point make_trivial_algebraic(const IntPoly& minpoly);
Point make_trivial_finite(std::int64_t p, const Integer& residue);
Point make_real_power(const Rational& upsilon, const Rational& t);
/// Folds z onto the closed upper half-plane.
Point make_complex_fold(const Rational& upsilon, const GaussianRational& z);
Point make_padic_power(std::int64_t p, const Rational& omega, const PadicNumber& s);
Point make_padic_power(std::int64_t p, const Rational& omega, const Rational& s, int digits = kDefaultPadicDigits);

/// Throws InvalidArgument when parameters are out of range.
void validate(const Point& x);
std::string to_string(const Point& x);
std::string kind_name(const Point& x);

/// The zero of each minimal field; the image of the fibration map.
struct ZeroQ {
  friend bool operator==(const ZeroQ&, const ZeroQ&) = default;
};
struct ZeroR {
  Rational upsilon;
  friend bool operator==(const ZeroR&, const ZeroR&) = default;
};
struct ZeroP {
  std::int64_t p;
  Rational omega;
  friend bool operator==(const ZeroP&, const ZeroP&) = default;
};
struct ZeroPInf {
  std::int64_t p;
  friend bool operator==(const ZeroPInf&, const ZeroPInf&) = default;
};
using BasePoint = std::variant<ZeroQ, ZeroR, ZeroP, ZeroPInf>;

std::string to_string(const BasePoint& b);
/// The minimal field whose zero is b.
MinimalFieldTag base_field(const BasePoint& b);
/// b as a point of the affine line (the zero of its field).
Point to_point(const BasePoint& b);

/// lambda_x(poly) = |poly(x)|.
Magnitude eval_point(const Point& x, const IntPoly& poly);
/// lambda_x(t).
Magnitude abs_point(const Point& x);
BasePoint base_point(const Point& x);
bool is_ultrametric(const Point& x);

/// Rewrites degenerate encodings: degree-one algebraic points become
/// rational ones and real complex points become real points.
Point canonical(const Point& x);

struct PointEquality {
  bool equal = false;
  /// False when the answer rests on finite p-adic precision.
  bool certain = true;
  /// A polynomial on which the seminorms differ, when one was found.
  std::optional<IntPoly> witness;
};
PointEquality points_equal(const Point& x, const Point& y);

bool in_ball(const Point& x, const Rational& radius);

struct OpenSetConstraint {
  IntPoly poly;
  bool less_than;  // lambda(poly) < bound, otherwise lambda(poly) > bound
  Rational bound;
};
bool in_open_set(const Point& x, const std::vector<OpenSetConstraint>& constraints);

}  // namespace berkline
