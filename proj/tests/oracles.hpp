#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "berkline/matrix.hpp"

namespace oracle {

using berkline::Rational;
using berkline::RatMatrix;

/// Leibniz determinant over all permutations.
inline Rational det_leibniz(const RatMatrix& a, const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < perm.size() && term != 0; ++i) term *= a(idx[i], idx[perm[i]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// det(1 - t a) by summing Leibniz principal minors over all subsets.
inline std::vector<Rational> fredholm_by_subsets(const RatMatrix& a, std::size_t degree) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(degree + 1, Rational(0));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    if (idx.size() > degree) continue;
    Rational m = idx.empty() ? Rational(1) : det_leibniz(a, idx);
    c[idx.size()] += idx.size() % 2 ? Rational(-m) : m;
  }
  return c;
}

/// Coefficients of prod (1 - d_i t), truncated.
inline std::vector<Rational> product_expansion(const std::vector<Rational>& d, std::size_t degree) {
  std::vector<Rational> c(degree + 1, Rational(0));
  c[0] = 1;
  for (const auto& x : d) {
    std::vector<Rational> next = c;
    for (std::size_t k = 1; k <= degree; ++k) next[k] -= x * c[k - 1];
    c = next;
  }
  return c;
}

/// Lower hull by checking, for every pair of points, that no point lies below the chord.
/// Returns (slope, length) pairs.
inline std::vector<std::pair<Rational, std::int64_t>> hull_by_pairs(const std::vector<std::pair<std::int64_t, Rational>>& pts) {
  std::vector<std::pair<std::int64_t, Rational>> verts;
  for (const auto& v : pts) {
    // v is a vertex iff no chord between points strictly left and right passes on or below it
    bool vertex = true;
    for (const auto& a : pts)
      for (const auto& b : pts) {
        if (!(a.first < v.first && v.first < b.first)) continue;
        Rational at = a.second + (b.second - a.second) * Rational(v.first - a.first, b.first - a.first);
        if (at <= v.second) vertex = false;
      }
    if (vertex) verts.push_back(v);
  }
  std::vector<std::pair<Rational, std::int64_t>> out;
  for (std::size_t k = 1; k < verts.size(); ++k) {
    std::int64_t len = verts[k].first - verts[k - 1].first;
    out.emplace_back((verts[k].second - verts[k - 1].second) / len, len);
  }
  return out;
}

/// Eigenvalues of a complex matrix via the companion matrix of its
/// characteristic polynomial computed by Eigen.
inline std::vector<std::complex<double>> eigen_companion_roots(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  // characteristic polynomial from the eigen-solver-independent Faddeev-LeVerrier recursion in doubles
  std::vector<std::complex<double>> c(n + 1);
  c[n] = 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace oracle
