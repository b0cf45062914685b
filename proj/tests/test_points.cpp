#include <cmath>
#include <functional>

#include "berkline/error.hpp"
#include "berkline/picture.hpp"
#include "berkline/point.hpp"
#include "berkline/sequence.hpp"
#include "doctest.h"

using namespace berkline;

namespace {

Magnitude E(long b, Rational e) { return Magnitude::exp(Rational(b), e); }
IntPoly P(const char* s) { return parse_int_poly(s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("polynomial parsing") {
  CHECK(to_string(P("3t-2")) == "3t-2");
  CHECK(to_string(P("t^2 + 1")) == "t^2+1");
  CHECK(P("2*x^3 - x") == IntPoly({0, -1, 0, 2}));
  CHECK(is_irreducible(P("t^2+1")));
  CHECK_FALSE(is_irreducible(P("t^2-1")));
  CHECK_FALSE(is_irreducible(P("t^4+4")));  // Sophie Germain
  CHECK(is_irreducible(P("t^5-t-1")));
  CHECK(count_real_roots(to_rat_poly(P("t^3-2t"))) == 3);
}

TEST_CASE("eval_point") {
  CHECK(eval_point(make_trivial_rational(Rational(2, 3)), P("3t-2")).is_zero());
  CHECK(eval_point(make_trivial_rational(Rational(2, 3)), P("t")).is_one());
  CHECK(eval_point(make_padic_power(2, Rational(1), Rational(6)), P("t")) == E(2, -1));
  auto i = make_trivial_algebraic(P("t^2+1"));
  CHECK(eval_point(i, P("t^2+1")).is_zero());
  CHECK(eval_point(i, P("t^4-1")).is_zero());
  CHECK(eval_point(i, P("t+2")).is_one());
  CHECK(eval_point(GenericTrivial{}, P("t^3-5")).is_one());
  CHECK(eval_point(GenericTrivial{}, IntPoly()).is_zero());
  CHECK(eval_point(make_real_power(Rational(1, 2), Rational(3)), P("t^2-1")) == E(2, Rational(3, 2)));
  // |1+2i|^2 = 5
  CHECK(eval_point(make_complex_fold(Rational(1), GaussianRational(1, 2)), P("t")) == E(5, Rational(1, 2)));
  CHECK(eval_point(make_trivial_finite(3, Integer(2)), P("t+1")).is_zero());
}

TEST_CASE("abs_point") {
  CHECK(abs_point(make_real_power(Rational(1, 2), Rational(4))) == E(2, 1));
  CHECK(abs_point(make_trivial_finite(5, Integer(0))).is_zero());
  CHECK(abs_point(make_padic_power(3, Rational(2), Rational(1, 3))) == E(3, 2));
}

TEST_CASE("base_point") {
  CHECK(std::get<ZeroP>(base_point(make_padic_power(2, Rational(3), Rational(5)))) == ZeroP{2, Rational(3)});
  CHECK(std::get<ZeroPInf>(base_point(make_trivial_finite(7, Integer(3)))) == ZeroPInf{7});
  CHECK(std::holds_alternative<ZeroQ>(base_point(make_trivial_algebraic(P("t^2+1")))));
  CHECK(std::get<ZeroR>(base_point(make_complex_fold(Rational(1, 2), GaussianRational(0, 1)))) == ZeroR{Rational(1, 2)});
  CHECK(to_string(BasePoint{ZeroP{2, Rational(3)}}) == "0_2^3");
}

TEST_CASE("base point agrees with constants") {
  std::vector<Point> pts{make_trivial_rational(Rational(5, 7)),  make_trivial_finite(5, Integer(2)),
                         make_real_power(Rational(1, 3), Rational(-2)), make_padic_power(3, Rational(2), Rational(9, 2)),
                         make_complex_fold(Rational(1), GaussianRational(1, 1)), GenericTrivial{}};
  for (const auto& x : pts) {
    for (int c = -12; c <= 12; ++c) {
      CHECK(mag_cmp(eval_point(x, IntPoly::constant(c)), abs_value(base_field(base_point(x)), Rational(c))) ==
            Ordering::Equal);
    }
  }
}

TEST_CASE("points_equal") {
  auto a = make_complex_fold(Rational(1), GaussianRational(1, 2));
  auto b = make_complex_fold(Rational(1), GaussianRational(1, -2));
  CHECK(points_equal(a, b).equal);

  auto r = points_equal(make_trivial_rational(Rational(1, 2)), make_real_power(Rational(1), Rational(1, 2)));
  CHECK_FALSE(r.equal);
  REQUIRE(r.witness);
  CHECK(eval_point(make_trivial_rational(Rational(1, 2)), *r.witness) !=
        eval_point(make_real_power(Rational(1), Rational(1, 2)), *r.witness));

  CHECK(points_equal(make_trivial_rational(Rational(2, 3)), make_trivial_rational(Rational(2, 3))).equal);
  CHECK(points_equal(make_trivial_algebraic(P("2t-1")), make_trivial_rational(Rational(1, 2))).equal);

  // inexact p-adic values agree only to their precision
  auto x = make_padic_power(2, Rational(1), PadicNumber::from_unit(2, 0, Integer(5), 3));
  auto y = make_padic_power(2, Rational(1), Rational(13));
  auto eq = points_equal(x, y);
  CHECK(eq.equal);
  CHECK_FALSE(eq.certain);
  CHECK_FALSE(points_equal(make_padic_power(2, Rational(1), Rational(1)), make_padic_power(2, Rational(1), Rational(0))).equal);
}

TEST_CASE("is_ultrametric") {
  CHECK_FALSE(is_ultrametric(make_real_power(Rational(1), Rational(3))));
  CHECK(is_ultrametric(make_padic_power(2, Rational(1), Rational(3))));
  CHECK(is_ultrametric(GenericTrivial{}));
  CHECK_FALSE(is_ultrametric(make_complex_fold(Rational(1), GaussianRational(0, 1))));
}

TEST_CASE("in_ball") {
  CHECK(in_ball(make_padic_power(2, Rational(1), Rational(1, 4)), Rational(4)));
  CHECK_FALSE(in_ball(make_padic_power(2, Rational(1), Rational(1, 8)), Rational(4)));
  CHECK_FALSE(in_ball(make_real_power(Rational(1), Rational(5)), Rational(4)));
  for (int r = -5; r <= 5; ++r) CHECK(in_ball(make_trivial_rational(Rational(r, 3)), Rational(1)));
}

TEST_CASE("in_open_set") {
  CHECK(in_open_set(make_trivial_rational(Rational(2)), {{P("t-2"), true, Rational(1, 2)}}));
  CHECK(in_open_set(make_padic_power(2, Rational(1), Rational(1)), {{P("t"), false, Rational(1, 2)}}));
  CHECK_FALSE(in_open_set(make_real_power(Rational(1), Rational(1)), {{IntPoly::constant(2), true, Rational(1)}}));
}

TEST_CASE("invalid points") {
  CHECK(code_of([] { make_trivial_algebraic(P("t^2-1")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_real_power(Rational(0), Rational(1)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_padic_power(6, Rational(1), Rational(1)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_padic_power(2, Rational(-1), Rational(1)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("canonical forms") {
  CHECK(std::holds_alternative<TrivialRational>(canonical(make_trivial_algebraic(P("3t-2")))));
  CHECK(std::holds_alternative<RealPower>(canonical(make_complex_fold(Rational(1), GaussianRational(3)))));
  auto f = make_complex_fold(Rational(1), GaussianRational(2, -5));
  CHECK(std::get<ComplexFold>(f).z.im == 5);
}

namespace {

SequenceDescriptor padic_seq(GrowthTerm::Form form, Rational c, std::int64_t q) {
  SequenceDescriptor s;
  s.family = SequenceDescriptor::Family::Padic;
  s.prime.q = q;
  s.exponent.form = form;
  s.exponent.c = c;
  return s;
}

}  // namespace

TEST_CASE("converges_to") {
  // (Q_q^{1/i}, r) -> r in Q_0
  auto s = padic_seq(GrowthTerm::Form::OverIndex, Rational(1), 3);
  s.element.constant = Rational(5, 2);
  CHECK(converges_to(s, make_trivial_rational(Rational(5, 2))));
  CHECK_FALSE(converges_to(s, make_trivial_rational(Rational(1, 2))));

  // (Q_q^i, n + q^i) -> [n]_q
  auto d = padic_seq(GrowthTerm::Form::TimesIndex, Rational(1), 3);
  d.element.constant = Rational(4);
  d.element.tail = ElementTail{Rational(1), false, Integer(3), 1, 0};
  CHECK(converges_to(d, make_trivial_finite(3, Integer(1))));
  CHECK_FALSE(converges_to(d, make_trivial_finite(3, Integer(2))));

  // (Q_q^i, n + 1/q): |s_i - n|_q = q
  auto bad = padic_seq(GrowthTerm::Form::TimesIndex, Rational(1), 3);
  bad.element.constant = Rational(4) + Rational(1, 3);
  CHECK_FALSE(converges_to(bad, make_trivial_finite(3, Integer(1))));
}

TEST_CASE("numeric_limit_check") {
  // mu_{R^{1/i}}(r) -> mu_{Q_0}(r)
  std::vector<Point> seq;
  for (int i = 1; i <= 200; ++i) seq.push_back(make_real_power(Rational(1, i), Rational(3, 2)));
  auto target = make_trivial_rational(Rational(3, 2));
  auto rep = numeric_limit_check(seq, target, {P("t"), P("t+1"), IntPoly::constant(2)}, 0.05);
  CHECK(rep.within_tolerance);

  std::vector<Point> constant(20, target);
  CHECK(numeric_limit_check(constant, target, {P("t")}, 1e-12).max_deviation == 0.0);

  std::vector<Point> pw;
  for (int i = 1; i <= 30; ++i) pw.push_back(make_padic_power(2, Rational(1), rpow(Rational(2), i)));
  auto r2 = numeric_limit_check(pw, make_trivial_rational(Rational(0)), {IntPoly::constant(2)}, 1e-6);
  CHECK(r2.max_deviation == doctest::Approx(0.5));
  CHECK_FALSE(r2.within_tolerance);
}

TEST_CASE("mz picture") {
  auto pic = mz_structure(5, {Rational(1), Rational(1, 2)}, {Rational(1)}, {{1, Rational(1, 2)}});
  REQUIRE(pic.arcs.size() == 3);
  CHECK(pic.arcs[0].q == 2);
  CHECK(pic.arcs[2].q == 5);
  for (const auto& a : pic.arcs) CHECK(a.endpoint.label == "0_" + std::to_string(a.q) + "^inf");
  CHECK(pic.real_branch.front().second.label == "0_R^1");
  CHECK(pic.real_branch.front().second.x == doctest::Approx(0.0));
  CHECK(pic.zero_q.x == doctest::Approx(2.0));
  CHECK(omega_threshold(1, Rational(1, 2), 2) == doctest::Approx(1.0));
  // radii decrease with the prime index
  CHECK(pic.arcs[0].radius > pic.arcs[1].radius);
  CHECK(picture_svg(pic).find("<svg") != std::string::npos);
}
