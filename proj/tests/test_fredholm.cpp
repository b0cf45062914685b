#include <functional>
#include <random>

#include "berkline/error.hpp"
#include "berkline/fredholm.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace berkline;

namespace {

Magnitude E(long b, Rational e) { return Magnitude::exp(Rational(b), e); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

DecayCertificate affine(long a, long b) {
  DecayCertificate d;
  d.form = DecayCertificate::Form::Affine;
  d.a = a;
  d.b = b;
  return d;
}

PadicMatrix block(std::int64_t p, std::vector<std::vector<Rational>> rows) {
  RatMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return {p, m};
}

OperatorSpec diag_powers(std::int64_t p) { return make_operator(p, "p^i at (i,i)", affine(1, 0)); }
OperatorSpec shift(std::int64_t p) { return make_operator(p, "p^i at (i,i+1)", affine(1, 0)); }

}  // namespace

TEST_CASE("fredholm_coeffs of diag(p, p^2, p^3)") {
  auto s = fredholm_coeffs(make_finite_rank(block(2, {{2, 0, 0}, {0, 4, 0}, {0, 0, 8}})), 3, 3);
  CHECK(s.exact == std::vector<Rational>{1, -(2 + 4 + 8), 8 + 16 + 32, -64});
  CHECK(s.method == "principal-minors");
  // the same through the diagonal route
  auto t = fredholm_coeffs(diag_powers(2), 3, 3);
  CHECK(t.exact == s.exact);
  CHECK(t.method == "diagonal-product");
}

TEST_CASE("fredholm_coeffs of the weighted shift") {
  auto s = fredholm_coeffs(shift(2), 5, 8);
  for (std::size_t m = 1; m <= 5; ++m) CHECK(s.exact[m] == 0);
  CHECK(s.exact[0] == 1);
  for (std::size_t m = 0; m <= 5; ++m) CHECK(s.stabilization[m].is_infinite());
  CHECK(newton_polygon(s).segments.empty());
}

TEST_CASE("zero operator") {
  DecayCertificate zero;
  auto spec = make_operator(3, "0", zero);
  auto s = fredholm_coeffs(spec, 4, 6);
  CHECK(s.exact == std::vector<Rational>{1, 0, 0, 0, 0});
  auto r = fredholm_resolvent(s, spec);
  CHECK(r.verified);
  CHECK(r.x[0].m == RatMatrix::identity(6));
  for (std::size_t k = 1; k < r.x.size(); ++k) CHECK(r.x[k].m.is_zero());
}

TEST_CASE("truncation below degree") {
  CHECK(code_of([] { fredholm_coeffs(shift(2), 6, 4); }) == ErrorCode::TruncationInsufficient);
}

TEST_CASE("fredholm_coeffs agrees with the subset oracle") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-30, 30), e(1, 6);
  for (int k = 0; k < 30; ++k) {
    std::size_t n = 1 + k % 5;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(d(rng), e(rng)), m(i, j).canonicalize();
    PadicMatrix a{k % 2 ? 2 : 5, m};
    auto s = fredholm_coeffs(make_finite_rank(a), static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
    CHECK(s.exact == oracle::fredholm_by_subsets(m, n));
    // det(1 - t u) is the reversed characteristic polynomial
    auto cp = charpoly_faddeev(m);
    for (std::size_t j = 0; j <= n; ++j) CHECK(s.exact[j] == cp[n - j]);
  }
}

TEST_CASE("banded route agrees with the subset oracle") {
  auto spec = make_operator(3, "p^i at (i,i); 2 * p^(i+1) at (i,i+1); p^i at (i+1,i)", affine(1, 0));
  for (std::int64_t n : {3, 5, 7}) {
    auto s = fredholm_coeffs(spec, 3, n);
    CHECK(s.method == "berkowitz");
    CHECK(s.exact == oracle::fredholm_by_subsets(truncate(spec, n).matrix.m, 3));
  }
}

TEST_CASE("fredholm_resolvent") {
  auto spec = shift(2);
  auto s = fredholm_coeffs(spec, 5, 8);
  auto r = fredholm_resolvent(s, spec);
  CHECK(r.verified);
  auto u = truncate(spec, 8).matrix;
  for (std::size_t i = 0; i < r.x.size(); ++i) CHECK(r.x[i].m == mat_pow(u, i).m);

  auto d = diag_powers(2);
  auto sd = fredholm_coeffs(d, 1, 3);
  auto rd = fredholm_resolvent(sd, d);
  RatMatrix expect = Rational(-(2 + 4 + 8)) * RatMatrix::identity(3) + truncate(d, 3).matrix.m;
  CHECK(rd.x[1].m == expect);

  // degree >= N: x_N vanishes
  auto full = fredholm_coeffs(d, 4, 4);
  CHECK(fredholm_resolvent(full, d).x[4].m.is_zero());
}

TEST_CASE("tampered coefficients are caught") {
  auto spec = diag_powers(3);
  auto s = fredholm_coeffs(spec, 3, 5);
  s.exact[2] += 1;
  CHECK(code_of([&] { fredholm_resolvent(s, spec); }) == ErrorCode::IdentityViolation);
}

TEST_CASE("newton polygon of a series") {
  auto s = fredholm_coeffs(diag_powers(3), 6, 10);
  auto ng = newton_polygon(s);
  REQUIRE(ng.segments.size() == 6);
  for (int k = 0; k < 6; ++k) CHECK(ng.segments[k] == NewtonSegment{Rational(k + 1), 1});
  CHECK(s.certified_unit_digits[6] == 5);
  CHECK(s.certified_unit_digits[1] == 10);

  // uncertified valuation: coefficient of degree N at truncation N for a banded operator
  auto spec = make_operator(2, "p^i at (i,i); p^i at (i+1,i); p^i at (i,i+1)", affine(1, 0));
  auto coarse = fredholm_coeffs(spec, 2, 2);
  bool any_uncertified = false;
  for (bool b : coarse.valuation_certified) any_uncertified = any_uncertified || !b;
  if (any_uncertified) CHECK(code_of([&] { newton_polygon(coarse); }) == ErrorCode::IndeterminateValuation);
}

TEST_CASE("check_zero_bound") {
  auto d = diag_powers(3);
  auto b = check_zero_bound(fredholm_coeffs(d, 6, 10), d, 5);
  CHECK(b.holds);
  REQUIRE(b.min_zero);
  REQUIRE(b.inv_radius);
  CHECK(*b.min_zero == E(3, 1));
  CHECK(mag_cmp(*b.min_zero, *b.inv_radius) == Ordering::Equal);

  auto s = shift(2);
  auto bs = check_zero_bound(fredholm_coeffs(s, 8, 12), s, 6);
  CHECK(bs.holds);
  CHECK_FALSE(bs.min_zero);
  CHECK_FALSE(bs.inv_radius);
  CHECK(bs.radius.is_zero());

  auto f = make_finite_rank(block(5, {{5, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
  auto bf = check_zero_bound(fredholm_coeffs(f, 3, 3), f, 2);
  CHECK(bf.holds);
  CHECK(*bf.min_zero == E(5, 1));
  CHECK(*bf.inv_radius == E(5, 1));
}

TEST_CASE("find_rational_zeros") {
  auto one = find_rational_zeros({1, -2}, 2, 16);
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].root);
  CHECK(*one[0].root->exact() == Rational(1, 2));

  auto three = find_rational_zeros(oracle::product_expansion({3, 9, 27}, 3), 3, 16);
  REQUIRE(three.size() == 3);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(three[i].root);
    CHECK(three[i].root->valuation() == -(i + 1));
    CHECK(*three[i].root->exact() == rpow(Rational(3), -(i + 1)));
  }

  auto ram = find_rational_zeros({1, 0, -5}, 5, 16);
  REQUIRE(ram.size() == 1);
  CHECK_FALSE(ram[0].root);
  CHECK(ram[0].valuation == Rational(-1, 2));
  CHECK(ram[0].multiplicity == 2);

  // 1 - t - t^2 over Q_5: discriminant 5, roots in a ramified extension
  // 1 + t^2 over Q_5: roots +-i (i^2 = -1 has roots mod 5), lifted
  auto i5 = find_rational_zeros({1, 0, 1}, 5, 20);
  REQUIRE(i5.size() == 2);
  for (const auto& z : i5) {
    REQUIRE(z.root);
    REQUIRE(z.residual);
    CHECK(mag_le(*z.residual, E(5, -19)));
  }
  // 1 + t^2 over Q_3: roots live in the unramified quadratic extension
  auto i3 = find_rational_zeros({1, 0, 1}, 3, 20);
  REQUIRE(i3.size() == 1);
  CHECK_FALSE(i3[0].root);
  CHECK(i3[0].multiplicity == 2);

  // irrational lifted root: 1 - 7t + t^2 over Q_7 has a unit root and a root of valuation... both simple
  auto irr = find_rational_zeros({2, -3, 5}, 7, 24);
  for (const auto& z : irr) {
    if (!z.root) continue;
    CHECK(mag_le(*z.residual, E(7, -20)));
  }
}

TEST_CASE("lifted roots have the magnitude of their segment") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(-40, 40);
  for (int k = 0; k < 40; ++k) {
    std::vector<Rational> poly{1};
    for (int m = 1; m <= 4; ++m) poly.emplace_back(d(rng) * (k % 3 + 1));
    if (poly.back() == 0) poly.back() = 3;
    for (std::int64_t p : {2, 3, 5}) {
      auto zs = find_rational_zeros(poly, p, 24);
      std::int64_t total = 0;
      for (const auto& z : zs) {
        total += z.root ? 1 : z.multiplicity;
        if (!z.root) continue;
        CHECK(Rational(z.root->valuation()) == z.valuation);
        REQUIRE(z.residual);
        CHECK(mag_le(*z.residual, Magnitude::exp(Rational(p), Rational(-20) - z.valuation * 4)));
      }
      CHECK(total == 4);
    }
  }
}
