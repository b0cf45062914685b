#include <cmath>
#include <functional>
#include <random>

#include "berkline/error.hpp"
#include "berkline/fields.hpp"
#include "berkline/padic.hpp"
#include "doctest.h"

using namespace berkline;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

Magnitude E(long b, Rational e) { return Magnitude::exp(Rational(b), e); }

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(padic_valuation(Rational(12, 5), 2) == 2);
  CHECK(padic_valuation(Rational(12, 5), 5) == -1);
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(10) == 29);
  CHECK(primes_up_to(12) == std::vector<std::int64_t>{2, 3, 5, 7, 11});
  CHECK(ExtRational(Rational(3)) < ExtRational::infinity());
  CHECK((ExtRational(Rational(1)) + ExtRational::infinity()).is_infinite());
}

TEST_CASE("padic_from_rational") {
  auto a = PadicNumber::from_rational(2, Rational(4), 8);
  CHECK(a.valuation() == 2);
  CHECK(a.unit_mod(8) == 1);
  auto b = PadicNumber::from_rational(2, Rational(1, 3), 4);
  CHECK(b.valuation() == 0);
  CHECK(b.unit_mod(4) == 11);
  auto c = PadicNumber::from_rational(3, Rational(6), 2);
  CHECK(c.valuation() == 1);
  CHECK(c.unit_mod(2) == 2);
  CHECK(c.str() == "3^1 * (2 mod 3^2)");
}

TEST_CASE("residue_bracket") {
  CHECK(residue_bracket(3, Integer(1), Integer(2)) == 2);
  CHECK(residue_bracket(5, Integer(2), Integer(3)) == 4);
  CHECK(code_of([] { residue_bracket(2, Integer(1), Integer(2)); }) == ErrorCode::DivisorCollision);
}

TEST_CASE("padic arithmetic") {
  auto two = PadicNumber::from_rational(2, Rational(2));
  auto s = two + two;
  CHECK(s.valuation() == 2);
  CHECK(s.unit_mod(8) == 1);

  auto three = PadicNumber::from_rational(3, Rational(3));
  auto prod = three * PadicNumber::from_rational(3, Rational(1, 3));
  CHECK(prod.valuation() == 0);
  CHECK(prod.unit_mod(8) == 1);

  // inexact digits: 3 known to 4 digits, plus 1 gives 4 with two digits lost
  auto x = PadicNumber::from_unit(2, 0, Integer(3), 4);
  auto y = x + PadicNumber::from_unit(2, 0, Integer(1), 4);
  CHECK(y.valuation() == 2);
  CHECK(y.digits() == 2);
  CHECK(y.unit_mod(2) == 1);
  CHECK_FALSE(y.is_exact());

  // total cancellation is indeterminate
  auto z = x - x;
  CHECK(z.is_indeterminate());
  CHECK(code_of([&] { (void)z.valuation(); }) == ErrorCode::IndeterminateValuation);

  // exact provenance survives exact arithmetic
  auto q = PadicNumber::from_rational(5, Rational(2, 5)) * PadicNumber::from_rational(5, Rational(25, 4));
  REQUIRE(q.exact());
  CHECK(*q.exact() == Rational(5, 2));
}

TEST_CASE("padic images respect products") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-50, 50), e(1, 40);
  for (int k = 0; k < 200; ++k) {
    Rational a(d(rng), e(rng)), b(d(rng), e(rng));
    a.canonicalize();
    b.canonicalize();
    for (std::int64_t p : {2, 3, 7}) {
      auto x = PadicNumber::from_rational(p, a, 12) * PadicNumber::from_rational(p, b, 12);
      auto y = PadicNumber::from_rational(p, a * b, 12);
      CHECK(agrees(x, y));
    }
  }
}

TEST_CASE("abs_value") {
  CHECK(abs_value(FieldQpw{2, Rational(1)}, Rational(1, 2)) == E(2, 1));
  CHECK(abs_value(FieldRv{Rational(1, 2)}, Rational(-4)) == E(2, 1));
  CHECK(abs_value(FieldQ0{}, Rational(5)).is_one());
  CHECK(abs_value(FieldQ0{}, Rational(0)).is_zero());
  CHECK(abs_value(FieldFp{5}, Rational(10)).is_zero());
  CHECK(abs_value(FieldFp{5}, Rational(3, 2)).is_one());
  CHECK(code_of([] { abs_value(FieldFp{5}, Rational(1, 5)); }) == ErrorCode::DivisorCollision);
  CHECK(abs_value(FieldQpw{3, Rational(2)}, Rational(9)) == E(3, -4));
  CHECK(code_of([] { abs_value(FieldQpw{2, Rational(1)}, PadicNumber::indeterminate(2, 5)); }) ==
        ErrorCode::IndeterminateValuation);
  CHECK(code_of([] { validate(MinimalFieldTag{FieldRv{Rational(2)}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { validate(MinimalFieldTag{FieldQpw{4, Rational(1)}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("abs_value is multiplicative and ultrametric") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-200, 200), e(1, 60);
  std::vector<MinimalFieldTag> tags{FieldQ0{}, FieldFp{7}, FieldQpw{2, Rational(1)}, FieldQpw{5, Rational(3, 2)},
                                    FieldRv{Rational(1)}, FieldRv{Rational(1, 3)}};
  for (int k = 0; k < 300; ++k) {
    Rational x(d(rng), 7 * e(rng) + 1), y(d(rng), 7 * e(rng) + 1);
    x.canonicalize();
    y.canonicalize();
    for (const auto& t : tags) {
      Magnitude xy = abs_value(t, x * y);
      Magnitude prod = mag_mul(abs_value(t, x), abs_value(t, y));
      if (std::holds_alternative<FieldRv>(t)) {
        CHECK(mag_close(xy, prod, std::ldexp(1.0, -30)));
      } else {
        CHECK(mag_cmp(xy, prod) == Ordering::Equal);
        CHECK(mag_le(abs_value(t, x + y), mag_max(abs_value(t, x), abs_value(t, y))));
      }
    }
  }
}
