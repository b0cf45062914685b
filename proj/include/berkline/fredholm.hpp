#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berkline/newton.hpp"
#include "berkline/operator.hpp"

namespace berkline {

/// Coefficients c_0..c_D of det(1 - t u_N), u_N the N x N truncation.
struct FredholmSeries {
  std::int64_t p = 2;
  std::int64_t degree = 0;
  std::int64_t truncation = 0;
  std::vector<Rational> exact;
  std::vector<PadicNumber> coeffs;
  /// Lower bound on v_p(c_m(N') - c_m(N)) over all N' > N.
  std::vector<ExtRational> stabilization;
  /// The valuation of c_m is the same for every larger truncation.
  std::vector<bool> valuation_certified;
  /// Unit digits of c_m shared by every larger truncation (-1: unbounded).
  std::vector<std::int64_t> certified_unit_digits;
  std::string method;
};

/// Default caps: D <= 8 for principal-minor enumeration, N <= 24 (the
/// BERKLINE_MAX_MINOR_DIM environment variable overrides N).
inline constexpr std::int64_t kMaxMinorDegree = 8;
inline constexpr std::int64_t kDefaultMaxTruncation = 24;
std::int64_t max_truncation();

/// Throws TruncationInsufficient when N < D.
FredholmSeries fredholm_coeffs(const OperatorSpec& spec, std::int64_t degree, std::int64_t truncation,
                               int digits = kDefaultPadicDigits);

/// The full polynomial det(1 - t u_N), degree <= N.
std::vector<Rational> truncation_determinant(const OperatorSpec& spec, std::int64_t truncation);

struct Resolvent {
  std::vector<PadicMatrix> x;  // x_0..x_D
  bool verified = false;
};
/// x_0 = 1, x_k = c_k + u x_{k-1}; checks det(1 - t u) = P(t, u)(1 - t u) mod t^{D+1}
/// and the trace identities for the coefficients. Throws IdentityViolation on failure.
Resolvent fredholm_resolvent(const FredholmSeries& series, const OperatorSpec& spec);

/// Newton polygon of the series. Throws IndeterminateValuation when a
/// coefficient's valuation is not certified.
NewtonPolygon newton_polygon(const FredholmSeries& series);

struct ZeroBound {
  bool holds = false;
  std::optional<Magnitude> min_zero;    // empty when there are no zeros
  std::optional<Magnitude> inv_radius;  // empty when the radius is zero (1/r = inf)
  Magnitude radius;
  bool radius_exact = false;
};
ZeroBound check_zero_bound(const FredholmSeries& series, const OperatorSpec& spec, std::int64_t n_max);

struct ZeroReport {
  Rational valuation;              // v_p of the zero
  std::int64_t multiplicity = 1;   // for valuation-only entries
  std::optional<PadicNumber> root; // set when the zero lies in Q_p and was lifted
  std::optional<Magnitude> residual;
  std::string note;
};
/// Zeros of the polynomial sum c_k t^k. Roots of integer-slope segments whose
/// residue roots are simple are lifted in Q_p; the rest are reported by valuation.
std::vector<ZeroReport> find_rational_zeros(const std::vector<Rational>& poly, std::int64_t p,
                                            int precision = kDefaultPadicDigits);

}  // namespace berkline
