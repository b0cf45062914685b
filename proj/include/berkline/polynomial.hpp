#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "berkline/rational.hpp"

namespace berkline {

/// Dense univariate polynomial, coefficients stored low degree first.
/// Invariant: no trailing zero coefficients (the zero polynomial is empty).
template <typename C>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<C> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(C c) { return Polynomial(std::vector<C>{std::move(c)}); }
  static Polynomial monomial(C c, std::size_t degree) {
    std::vector<C> v(degree + 1, C(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }
  /// The variable t.
  static Polynomial variable() { return Polynomial({C(0), C(1)}); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& coeffs() const noexcept { return coeffs_; }
  C coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : C(0); }
  const C& leading() const { return coeffs_.back(); }

  template <typename V>
  V evaluate(const V& x, V zero) const {
    V acc = std::move(zero);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<C> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(C(coeffs_[i] * static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<C> r(std::max(a.coeffs_.size(), b.coeffs_.size()), C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<C> r = a.coeffs_;
    for (auto& c : r) c = -c;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> r(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const C& s, const Polynomial& a) { return constant(s) * a; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

/// Parses expressions like "3t-2", "t^2 + 1", "-2*t^3+t", "5". Accepts 't' or 'x'.
IntPoly parse_int_poly(std::string_view text);
std::string to_string(const IntPoly& p);

Integer content(const IntPoly& p);
/// Content removed and leading coefficient made positive.
IntPoly primitive_part(const IntPoly& p);
/// Exact test that `divisor` divides `dividend` in Z[t] (equivalently Q[t] for primitive divisors).
bool divides(const IntPoly& divisor, const IntPoly& dividend);

Rational evaluate(const IntPoly& p, const Rational& x);
/// p(x) mod m, result in [0, m).
Integer evaluate_mod(const IntPoly& p, const Integer& x, const Integer& m);

RatPoly to_rat_poly(const IntPoly& p);
/// Scales by the lcm of denominators and removes content.
IntPoly clear_denominators(const RatPoly& p);

/// Euclidean division in Q[t]; returns (quotient, remainder).
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly monic(const RatPoly& p);
RatPoly gcd(RatPoly a, RatPoly b);
/// p / gcd(p, p'), made monic.
RatPoly squarefree_part(const RatPoly& p);
/// Number of distinct real roots (Sturm's theorem).
int count_real_roots(const RatPoly& p);

/// Certifies irreducibility over Q of a primitive polynomial of degree >= 1.
/// Throws UnsupportedDescriptor when neither the modular test nor Kronecker's
/// method can settle it within the built-in limits.
bool is_irreducible(const IntPoly& p);

}  // namespace berkline
