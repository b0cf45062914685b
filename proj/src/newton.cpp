#include "berkline/newton.hpp"

#include "berkline/error.hpp"

namespace berkline {

NewtonPolygon newton_polygon(const std::vector<ExtRational>& valuations) {
  std::vector<std::pair<std::int64_t, Rational>> pts;
  for (std::size_t m = 0; m < valuations.size(); ++m) {
    if (!valuations[m].is_infinite()) pts.emplace_back(static_cast<std::int64_t>(m), valuations[m].value());
  }
  NewtonPolygon poly;
  // Andrew's monotone chain, lower hull; points are already sorted by m.
  for (const auto& pt : pts) {
    while (poly.vertices.size() >= 2) {
      const auto& a = poly.vertices[poly.vertices.size() - 2];
      const auto& b = poly.vertices.back();
      // drop b unless it lies strictly below segment a -> pt
      Rational cross = (b.second - a.second) * (pt.first - a.first) - (pt.second - a.second) * (b.first - a.first);
      if (cross >= 0) {
        poly.vertices.pop_back();
      } else {
        break;
      }
    }
    poly.vertices.push_back(pt);
  }
  for (std::size_t k = 1; k < poly.vertices.size(); ++k) {
    const auto& a = poly.vertices[k - 1];
    const auto& b = poly.vertices[k];
    std::int64_t len = b.first - a.first;
    poly.segments.push_back({Rational((b.second - a.second) / len), len});
  }
  return poly;
}

std::vector<ZeroMagnitude> zero_valuations(const NewtonPolygon& polygon, std::int64_t p) {
  std::vector<ZeroMagnitude> out;
  for (const auto& s : polygon.segments) out.push_back({Magnitude::exp(Rational(p), s.slope), s.length});
  return out;
}

std::vector<Magnitude> nonzero_root_magnitudes(const std::vector<ExtRational>& valuations, std::int64_t p) {
  std::vector<Magnitude> out;
  for (const auto& z : zero_valuations(newton_polygon(valuations), p)) {
    for (std::int64_t k = 0; k < z.count; ++k) out.push_back(z.magnitude);
  }
  return out;
}

}  // namespace berkline
