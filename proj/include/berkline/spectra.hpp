#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "berkline/fredholm.hpp"
#include "berkline/point.hpp"

namespace berkline {

/// A spectrum element known only through its absolute value.
struct MagnitudeOnly {
  Magnitude magnitude;
  std::int64_t count = 1;
  std::string note;
};

struct SpectrumDescription {
  std::vector<Point> points;
  std::vector<MagnitudeOnly> magnitude_only;
  /// Symbolic families, e.g. "mu_K(m 1_K) for all minimal fields K".
  std::vector<std::string> families;
  std::function<bool(const Point&)> contains;
};

/// The spectrum of m in Z with the archimedean norm: one point per minimal
/// field K, namely the image of m in K.
SpectrumDescription spectrum_integer(const Integer& m);

inline constexpr std::size_t kMaxComplexDim = 12;

/// Eigenvalues folded onto the closed upper half-plane, as ComplexFold{1, z}
/// with dyadic coordinates, sorted and deduplicated.
std::vector<Point> spectrum_complex_matrix(const GaussMatrix& a, std::size_t max_dim = kMaxComplexDim);
GaussMatrix conjugate(const GaussMatrix& a);

struct CcSpectrum {
  SpectrumDescription spectrum;
  FredholmSeries series;
  std::vector<ZeroReport> zeros;
  SpectralRadius radius;
};
/// {0} together with the reciprocals of the Fredholm zeros over Q_p.
CcSpectrum spectrum_cc_operator(const OperatorSpec& spec, std::int64_t degree, std::int64_t truncation,
                                int digits = kDefaultPadicDigits);

struct Crosscheck {
  bool agree = false;
  std::vector<Magnitude> from_fredholm;   // |lambda| of nonzero spectrum elements
  std::vector<Magnitude> from_charpoly;   // root magnitudes of the characteristic polynomial
};
/// Compares the two computations of the nonzero spectrum of a k x k block, k <= 6.
Crosscheck crosscheck_finite_rank(const PadicMatrix& a);

}  // namespace berkline
