#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "berkline/magnitude.hpp"
#include "berkline/matrix.hpp"
#include "berkline/padic.hpp"

namespace berkline {

/// A k x k matrix over Q_p. Entries are exact rationals; entry() exposes them
/// as p-adic numbers.
struct PadicMatrix {
  std::int64_t p = 2;
  RatMatrix m;

  std::size_t size() const { return m.rows(); }
  PadicNumber entry(std::size_t i, std::size_t j, int digits = kDefaultPadicDigits) const;
};

/// Lower bound g on entry valuations: v_p(eta_ij) >= g(min(i, j)), indices from 1.
struct DecayCertificate {
  enum class Form {
    Affine,         // g(n) = a n + b, a > 0
    Quadratic,      // g(n) = a n^2 + b n + c, a > 0, nondecreasing on n >= 1
    FiniteSupport,  // eta_ij = 0 unless i, j <= support; g = floor on the block
    Zero,           // every entry is 0
  };
  Form form = Form::Zero;
  Rational a = 0;
  Rational b = 0;
  Rational c = 0;
  std::int64_t support = 0;
  Rational floor = 0;

  /// g(n); +inf beyond a finite support and for the zero operator.
  ExtRational at(std::int64_t n) const;
  void validate() const;
};

/// A completely continuous operator on c0 over Q_p, given by its matrix.
struct OperatorSpec {
  enum class Kind { Diagonal, Banded, General };

  std::int64_t p = 2;
  Kind kind = Kind::General;
  /// Banded: eta_ij = 0 when |i - j| > width.
  std::int64_t width = 0;
  /// Diagonal offsets j - i that may be nonzero, when known.
  std::optional<std::vector<std::int64_t>> offsets;
  /// eta_ij for i, j >= 1.
  std::function<Rational(std::int64_t, std::int64_t)> entry;
  DecayCertificate decay;
  /// Text of the entry formula, for reporting.
  std::string description;

  /// True when every possibly nonzero entry lies strictly above (or strictly
  /// below) the diagonal, so every truncation is nilpotent.
  bool strictly_triangular() const;
  /// True when the nonzero entries lie on one side of the diagonal, diagonal included.
  bool triangular() const;
};

/// Parses entry formulas such as "p^i at (i,i+1)" or "3 * p^(2i-1) at (i,i); 1/2 at (i+1,i)".
/// Factors are rationals and powers p^(a i + b); clauses are separated by ';'.
OperatorSpec make_operator(std::int64_t p, const std::string& entries, const DecayCertificate& decay,
                           std::optional<OperatorSpec::Kind> kind = std::nullopt,
                           std::optional<std::int64_t> width = std::nullopt);
/// A finite-rank operator embedding the k x k matrix in the top-left corner.
OperatorSpec make_finite_rank(const PadicMatrix& a);

/// Checks the oracle against kind, band and certificate on the first `horizon`
/// indices. Throws InvalidArgument on a violation.
void spot_check(const OperatorSpec& spec, std::int64_t horizon = 24);

/// sup |eta_ij|.
Magnitude op_norm(const PadicMatrix& m);
Magnitude op_norm(const OperatorSpec& spec);

PadicMatrix mat_pow(const PadicMatrix& m, std::uint64_t n);

struct NeumannResult {
  PadicMatrix inverse;
  bool exact = false;             // the series terminated
  std::int64_t certified_to = 0;  // inverse correct modulo p^certified_to (entrywise)
  std::size_t terms = 0;
};
/// sum_k (1 - x)^k; requires ||1 - x|| < 1. Stops when a term vanishes or its
/// valuation reaches `digits`.
NeumannResult neumann_inverse(const PadicMatrix& x, std::size_t max_terms = 256, int digits = kDefaultPadicDigits);

struct Truncation {
  PadicMatrix matrix;
  /// Lower bound on v_p(c_m(N') - c_m(N)) for every N' > N.
  std::function<ExtRational(std::int64_t m)> coeff_error_bound;
};
Truncation truncate(const OperatorSpec& spec, std::int64_t n);

struct SpectralRadius {
  Magnitude estimate;
  std::vector<Magnitude> sequence;  // ||u_N^n||^{1/n}, n = 1..n_max
  bool converged = false;
  bool exact = false;  // estimate is the certified limit
};
/// Throws TruncationInsufficient when N cannot certify the first n_max norms.
SpectralRadius spectral_radius(const OperatorSpec& spec, std::int64_t n_max, std::int64_t truncation);

std::string to_string(OperatorSpec::Kind k);

}  // namespace berkline
