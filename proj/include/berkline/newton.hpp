#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "berkline/magnitude.hpp"
#include "berkline/rational.hpp"

namespace berkline {

struct NewtonSegment {
  Rational slope;
  std::int64_t length;
  friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

/// Lower convex hull of the points (m, v_m) with finite v_m.
struct NewtonPolygon {
  std::vector<std::pair<std::int64_t, Rational>> vertices;
  std::vector<NewtonSegment> segments;
};

/// valuations[m] = v(c_m), +inf for zero coefficients (omitted from the hull).
/// Collinear points are not vertices.
NewtonPolygon newton_polygon(const std::vector<ExtRational>& valuations);

/// A segment of slope s and length l stands for l roots of absolute value p^s.
struct ZeroMagnitude {
  Magnitude magnitude;
  std::int64_t count;
};
std::vector<ZeroMagnitude> zero_valuations(const NewtonPolygon& polygon, std::int64_t p);

/// Root magnitudes of a polynomial sum a_k t^k with a_k given by valuations,
/// counted with multiplicity; zero roots (from vanishing low coefficients) are skipped.
std::vector<Magnitude> nonzero_root_magnitudes(const std::vector<ExtRational>& valuations, std::int64_t p);

}  // namespace berkline
