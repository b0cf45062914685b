#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "berkline/rational.hpp"

namespace berkline {

/// Plane layout of the zeros of all minimal fields: the real branch is the
/// segment from 0_R^1 at (0,0) to 0_Q at (2,0); the j-th prime q_j gets a
/// lower half-circle of radius 1/j from 0_Q to its endpoint 0_q^inf.
struct PicturePoint {
  std::string label;
  double x;
  double y;
};

struct PrimeArc {
  std::int64_t q;
  std::size_t index;  // j, 1-based
  double radius;
  double center_x;
  std::vector<std::pair<Rational, PicturePoint>> samples;  // (omega, 0_q^omega)
  PicturePoint endpoint;                                    // 0_q^inf
};

struct Threshold {
  std::int64_t k;
  Rational epsilon;
  std::int64_t p;
  double omega;  // ln(1 - eps) / (-k ln p)
};

struct Picture {
  PicturePoint zero_q;
  std::vector<std::pair<Rational, PicturePoint>> real_branch;  // (upsilon, 0_R^upsilon)
  std::vector<PrimeArc> arcs;
  std::vector<Threshold> thresholds;
};

PicturePoint real_zero_position(const Rational& upsilon);
PicturePoint padic_zero_position(std::size_t prime_index, std::int64_t q, const Rational& omega);

/// omega_{k,eps,p}: 0_p^omega lies in the basic neighbourhood of 0_Q for
/// (k, eps) exactly when omega < this value.
double omega_threshold(std::int64_t k, const Rational& epsilon, std::int64_t p);

Picture mz_structure(std::int64_t primes_upto, const std::vector<Rational>& upsilon_samples,
                     const std::vector<Rational>& omega_samples,
                     const std::vector<std::pair<std::int64_t, Rational>>& thresholds);

std::string picture_svg(const Picture& picture);

}  // namespace berkline
