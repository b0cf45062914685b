#pragma once

#include <cstddef>
#include <vector>

#include "berkline/error.hpp"
#include "berkline/gaussian.hpp"
#include "berkline/rational.hpp"

namespace berkline {

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == 0)) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::InvalidArgument, "matrix dimension mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_) x = s * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using GaussMatrix = Matrix<GaussianRational>;

template <typename T>
Matrix<T> mat_power(const Matrix<T>& a, std::uint64_t n) {
  Matrix<T> result = Matrix<T>::identity(a.rows());
  Matrix<T> base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

template <typename T>
T trace(const Matrix<T>& a) {
  T s(0);
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Coefficients of det(t*I - A), low degree first (monic, length n+1).
/// Berkowitz's division-free algorithm; works over any commutative ring.
template <typename T>
std::vector<T> charpoly_berkowitz(const Matrix<T>& a) {
  if (!a.square()) fail(ErrorCode::InvalidArgument, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  // high degree first while building
  std::vector<T> poly{T(1)};
  for (std::size_t k = 0; k < n; ++k) {
    // leading principal (k+1)x(k+1) block: [[A_k, C], [R, a_kk]]
    std::vector<T> col(k), row(k);
    for (std::size_t i = 0; i < k; ++i) {
      col[i] = a(i, k);
      row[i] = a(k, i);
    }
    // Toeplitz column: 1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C
    std::vector<T> toeplitz(k + 2, T(0));
    toeplitz[0] = T(1);
    toeplitz[1] = T(0) - a(k, k);
    std::vector<T> v = col;
    for (std::size_t j = 2; j <= k + 1; ++j) {
      T dot(0);
      for (std::size_t i = 0; i < k; ++i) dot += row[i] * v[i];
      toeplitz[j] = T(0) - dot;
      std::vector<T> next(k, T(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) next[i] += a(i, l) * v[l];
      v = std::move(next);
    }
    std::vector<T> out(k + 2, T(0));
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= i && j < poly.size(); ++j) out[i] += toeplitz[i - j] * poly[j];
    poly = std::move(out);
  }
  return {poly.rbegin(), poly.rend()};
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
Integer det_bareiss(IntMatrix a);

/// det(t*I - A) via the Faddeev-LeVerrier recursion, low degree first.
std::vector<Rational> charpoly_faddeev(const RatMatrix& a);

/// Principal minor of a on the given index set (rows = cols = idx).
Rational principal_minor(const RatMatrix& a, const std::vector<std::size_t>& idx);

}  // namespace berkline
