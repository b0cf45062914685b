#include "berkline/matrix.hpp"

namespace berkline {

Integer det_bareiss(IntMatrix a) {
  if (!a.square()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Rational> charpoly_faddeev(const RatMatrix& a) {
  if (!a.square()) fail(ErrorCode::InvalidArgument, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    c[n - k] = -trace(a * m) / Rational(static_cast<long>(k));
  }
  return c;
}

Rational principal_minor(const RatMatrix& a, const std::vector<std::size_t>& idx) {
  const std::size_t m = idx.size();
  IntMatrix b(m, m);
  Rational scale = 1;
  for (std::size_t r = 0; r < m; ++r) {
    Integer l = 1;
    for (std::size_t s = 0; s < m; ++s) l = lcm(l, a(idx[r], idx[s]).get_den());
    for (std::size_t s = 0; s < m; ++s) {
      const Rational& x = a(idx[r], idx[s]);
      b(r, s) = x.get_num() * (l / x.get_den());
    }
    scale *= Rational(l);
  }
  return Rational(det_bareiss(std::move(b))) / scale;
}

}  // namespace berkline
