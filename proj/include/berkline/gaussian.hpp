#pragma once

#include <string>

#include "berkline/rational.hpp"

namespace berkline {

/// re + im*i with rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  GaussianRational(int r) : re(r), im(0) {}                                            // NOLINT
  GaussianRational(long r) : re(r), im(0) {}                                           // NOLINT

  GaussianRational conj() const { return {re, Rational(-im)}; }
  /// re^2 + im^2
  Rational norm2() const { return re * re + im * im; }
  bool is_real() const { return im == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator*(GaussianRational a, long k) { return a *= GaussianRational(k); }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.norm2();
    GaussianRational q = a * b.conj();
    return {Rational(q.re / n), Rational(q.im / n)};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator==(const GaussianRational& a, int k) { return a.im == 0 && a.re == k; }
};

inline std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string s = z.re == 0 ? "" : to_string(z.re);
  if (z.im > 0 && !s.empty()) s += "+";
  return s + to_string(z.im) + "i";
}

}  // namespace berkline
