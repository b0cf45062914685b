// One PASS/FAIL line per acceptance criterion; exits nonzero when any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "berkline/error.hpp"
#include "berkline/spectra.hpp"
#include "berkline/sequence.hpp"
#include "oracles.hpp"

using namespace berkline;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Magnitude E(long b, Rational e) { return Magnitude::exp(Rational(b), e); }

DecayCertificate affine(long a, long b) {
  DecayCertificate d;
  d.form = DecayCertificate::Form::Affine;
  d.a = a;
  d.b = b;
  return d;
}

OperatorSpec weighted_shift() { return make_operator(2, "p^i at (i,i+1)", affine(1, 0)); }
OperatorSpec diag3() { return make_operator(3, "p^i at (i,i)", affine(1, 0)); }

std::vector<PadicMatrix> upper_triangular_blocks() {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> val(1, 4), unit(-3, 3);
  std::vector<PadicMatrix> out;
  for (int k = 0; k < 20; ++k) {
    RatMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) m(i, j) = Rational(2 * unit(rng) + 1) * rpow(Rational(2), val(rng));
    out.push_back({2, m});
  }
  return out;
}

// Criterion 1: the weighted shift (s_i) -> (p^i s_{i+1}) over Q_2.
void weighted_shift_case(Verdict& v) {
  const auto t0 = Clock::now();
  auto spec = weighted_shift();
  auto s = fredholm_coeffs(spec, 8, 12);
  for (int m = 1; m <= 8; ++m) v.require(s.exact[m] == 0, "c_" + std::to_string(m) + " = 0");

  auto u = truncate(spec, 12).matrix;
  for (int n = 1; n <= 6; ++n) {
    // u^n has entries p^(i + ... + i+n-1) at (i, i+n); the smallest valuation is at i = 1
    std::int64_t best = -1;
    for (int i = 1; i + n <= 12; ++i) {
      std::int64_t sum = 0;
      for (int k = i; k < i + n; ++k) sum += k;
      if (best < 0 || sum < best) best = sum;
    }
    v.require(best == n * (n + 1) / 2, "entry-product derivation");
    v.require(op_norm(mat_pow(u, n)) == E(2, -best), "||u^" + std::to_string(n) + "||");
  }

  auto r = spectral_radius(spec, 6, 12);
  for (std::size_t n = 1; n < r.sequence.size(); ++n) v.require(mag_less(r.sequence[n], r.sequence[n - 1]), "strictly decreasing");
  v.require(r.exact && r.estimate.is_zero(), "certified limit zero");

  auto cc = spectrum_cc_operator(spec, 8, 12);
  v.require(cc.spectrum.points.size() == 1 && cc.spectrum.magnitude_only.empty(), "spectrum is {0}");
  v.require(points_equal(cc.spectrum.points.at(0), make_padic_power(2, Rational(1), Rational(0))).equal, "0 in Q_2");

  auto b = check_zero_bound(s, spec, 6);
  v.require(b.holds && !b.min_zero, "zero bound holds vacuously");
  const double secs = seconds_since(t0);
  v.require(secs < 5.0, "runtime");
  v.detail << "c_1..c_8 = 0, ||u^n|| = 2^-n(n+1)/2 for n <= 6, radius 0, spectrum {0}, " << secs << " s";
}

// Criterion 2: diag(3^i).
void diagonal_case(Verdict& v) {
  const auto t0 = Clock::now();
  auto spec = diag3();
  auto s = fredholm_coeffs(spec, 6, 10);
  std::vector<Rational> d;
  for (int i = 1; i <= 10; ++i) d.push_back(rpow(Rational(3), i));
  auto expect = oracle::product_expansion(d, 6);
  std::int64_t min_digits = -1;
  for (int m = 0; m <= 6; ++m) {
    v.require(s.exact[m] == expect[m], "c_" + std::to_string(m) + " against the product expansion");
    v.require(s.coeffs[m].exact() && *s.coeffs[m].exact() == expect[m], "p-adic coefficient is exact");
    v.require(s.coeffs[m].valuation() == padic_valuation(expect[m], 3), "valuation of c_" + std::to_string(m));
    if (m > 0 && (min_digits < 0 || s.certified_unit_digits[m] < min_digits)) min_digits = s.certified_unit_digits[m];
  }

  auto ng = newton_polygon(s);
  v.require(ng.segments.size() == 6, "six segments");
  for (std::size_t k = 0; k < ng.segments.size(); ++k)
    v.require(ng.segments[k].slope == Rational(static_cast<long>(k + 1)) && ng.segments[k].length == 1, "slope k, length 1");

  auto cc = spectrum_cc_operator(spec, 6, 10);
  v.require(cc.zeros.size() == 6, "six lifted zeros");
  for (std::size_t k = 0; k < cc.zeros.size(); ++k) {
    const auto& z = cc.zeros[k];
    v.require(z.root.has_value(), "root lifted");
    if (!z.root) continue;
    const Rational expect_root = rpow(Rational(3), -static_cast<long>(k + 1));
    v.require(z.root->exact() && *z.root->exact() == expect_root, "root 3^-i");
    v.require(abs_value(FieldQpw{3, Rational(1)}, *z.root) == E(3, static_cast<long>(k + 1)), "zero magnitude 3^i");
    v.require(z.residual && mag_less(*z.residual, E(3, -10)), "residual < 3^-10");
  }

  auto b = check_zero_bound(s, spec, 5);
  v.require(b.holds && b.min_zero && b.inv_radius, "zero bound");
  if (b.min_zero && b.inv_radius) {
    v.require(*b.min_zero == E(3, 1) && mag_cmp(*b.min_zero, *b.inv_radius) == Ordering::Equal, "min |zero| = 3 = 1/r");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 5.0, "runtime");
  v.detail << "c_0..c_6 equal the product expansion to degree 10 exactly; slopes 1..6; roots 3^-1..3^-6 exact; "
           << "min |zero| = 1/r = 3; unit digits shared with every larger truncation >= " << min_digits << "; " << secs
           << " s";
}

// Criterion 3.
void crosscheck_case(Verdict& v) {
  int agree = 0;
  for (const auto& a : upper_triangular_blocks()) {
    auto c = crosscheck_finite_rank(a);
    v.require(c.agree, "crosscheck");
    agree += c.agree;
  }
  v.detail << agree << "/20 blocks agree";
}

// Criterion 4.
void folding_case(Verdict& v) {
  std::mt19937 rng(4120);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    GaussMatrix a(3, 3);
    Eigen::MatrixXcd e(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rational re(num(rng), den(rng)), im(num(rng), den(rng));
        re.canonicalize();
        im.canonicalize();
        a(i, j) = GaussianRational(re, im);
        e(i, j) = {re.get_d(), im.get_d()};
      }
    auto pts = spectrum_complex_matrix(a);
    for (auto lambda : oracle::eigen_companion_roots(e)) {
      std::complex<double> folded(lambda.real(), std::abs(lambda.imag()));
      double best = INFINITY;
      for (const auto& x : pts) {
        const auto& z = std::get<ComplexFold>(x).z;
        best = std::min(best, std::abs(std::complex<double>(z.re.get_d(), z.im.get_d()) - folded) /
                                  std::max(1.0, std::abs(folded)));
      }
      worst = std::max(worst, best);
      v.require(best < 1e-8, "eigenvalue matched");
    }
    auto conj = spectrum_complex_matrix(conjugate(a));
    v.require(conj.size() == pts.size(), "conjugate spectrum size");
    for (std::size_t i = 0; i < std::min(conj.size(), pts.size()); ++i)
      v.require(points_equal(conj[i], pts[i]).equal, "conjugation invariance");
  }
  v.detail << "20 matrices, worst relative deviation " << worst << ", conjugation invariant";
}

// Criterion 5.
void membership_case(Verdict& v) {
  auto d = spectrum_integer(Integer(0));
  v.require(d.contains(make_real_power(Rational(1, 2), Rational(0))), "0_R^{1/2}");
  v.require(d.contains(make_padic_power(2, Rational(3), Rational(0))), "0_2^3");
  v.require(d.contains(make_trivial_rational(Rational(0))), "0_Q");
  v.require(d.contains(make_trivial_finite(5, Integer(0))), "0_5^inf");
  v.require(!d.contains(make_padic_power(2, Rational(1), Rational(1))), "PadicPower{2,1,1} excluded");
  v.detail << "0_R^{1/2}, 0_2^3, 0_Q, 0_5^inf are members; (Q_2^1, 1) is not";
}

// Criterion 6.
struct PredicateCase {
  std::string name;
  SequenceDescriptor seq;
  Point target;
  bool expected;
};

SequenceDescriptor descriptor(SequenceDescriptor::Family fam, PrimeSequence prime, GrowthTerm exponent,
                              ElementFormula element) {
  SequenceDescriptor d;
  d.family = fam;
  d.prime = prime;
  d.exponent = exponent;
  d.element = std::move(element);
  return d;
}

std::vector<PredicateCase> predicate_table() {
  using F = SequenceDescriptor::Family;
  using G = GrowthTerm::Form;
  const PrimeSequence q3{false, 3}, q5{false, 5}, all{true, 2};
  const GrowthTerm halving{G::Geometric, Rational(1), Rational(1, 2)};
  const GrowthTerm one{G::Constant, Rational(1), Rational(1)};
  const GrowthTerm linear{G::TimesIndex, Rational(1), Rational(1)};
  auto constant = [](Rational c) {
    ElementFormula e;
    e.constant = c;
    return e;
  };
  ElementFormula near4 = constant(Rational(4));
  near4.tail = ElementTail{Rational(1), false, Integer(3), 1, 0};
  ElementFormula half = constant(Rational(1, 2));
  half.prefix = {Rational(0)};  // 1/2 has no residue in F_2
  ElementFormula power;
  power.tail = ElementTail{Rational(1), true, Integer(2), 1, 0};

  return {
      {"(Q_3^{2^-i}, 5/2) -> 5/2 in Q_0", descriptor(F::Padic, q3, halving, constant(Rational(5, 2))),
       make_trivial_rational(Rational(5, 2)), true},
      {"(Q_3^{2^-i}, 5/2) -> 1/2 in Q_0", descriptor(F::Padic, q3, halving, constant(Rational(5, 2))),
       make_trivial_rational(Rational(1, 2)), false},
      {"(Q_3^1, 5/2) -> 5/2 in Q_0", descriptor(F::Padic, q3, one, constant(Rational(5, 2))),
       make_trivial_rational(Rational(5, 2)), false},
      {"(R^{2^-i}, 3/2) -> 3/2 in Q_0", descriptor(F::Real, q3, halving, constant(Rational(3, 2))),
       make_trivial_rational(Rational(3, 2)), true},
      {"(R^1, 3/2) -> 3/2 in Q_0", descriptor(F::Real, q3, one, constant(Rational(3, 2))),
       make_trivial_rational(Rational(3, 2)), false},
      {"(Q_3^i, 4 + 3^i) -> [1]_3", descriptor(F::Padic, q3, linear, near4), make_trivial_finite(3, Integer(1)), true},
      {"(Q_3^i, 4 + 3^i) -> [2]_3", descriptor(F::Padic, q3, linear, near4), make_trivial_finite(3, Integer(2)), false},
      {"(Q_3^i, 13/3) -> [1]_3", descriptor(F::Padic, q3, linear, constant(Rational(13, 3))),
       make_trivial_finite(3, Integer(1)), false},
      {"(Q_3^1, 4) -> [1]_3", descriptor(F::Padic, q3, one, constant(Rational(4))), make_trivial_finite(3, Integer(1)),
       false},
      {"[1/2]_{p_i} -> 1/2 in Q_0", descriptor(F::Finite, all, one, half), make_trivial_rational(Rational(1, 2)), true},
      {"[2]_{p_i} -> 3 in Q_0", descriptor(F::Finite, all, one, constant(Rational(2))),
       make_trivial_rational(Rational(3)), false},
      {"[3]_5 -> 3 in Q_0", descriptor(F::Finite, q5, one, constant(Rational(3))), make_trivial_rational(Rational(3)),
       false},
      {"(Q_{p_i}^1, 2) -> 2 in Q_0", descriptor(F::Padic, all, one, constant(Rational(2))),
       make_trivial_rational(Rational(2)), true},
      {"(Q_{p_i}^1, p_i^i) -> 0 in Q_0", descriptor(F::Padic, all, one, power), make_trivial_rational(Rational(0)), true},
  };
}

void predicate_case(Verdict& v) {
  std::vector<IntPoly> polys;
  for (const char* s : {"t", "t-1", "2t-5", "t^2+1", "3", "t^4-2t+6", "t-3", "t-2", "t+2"}) polys.push_back(parse_int_poly(s));
  int agree = 0;
  const auto table = predicate_table();
  for (const auto& c : table) {
    bool predicate = converges_to(c.seq, c.target);
    std::vector<Point> prefix;
    for (int i = 1; i <= 200; ++i) prefix.push_back(instantiate(c.seq, i));
    auto rep = numeric_limit_check(prefix, c.target, polys, 1e-6);
    const bool ok = predicate == c.expected && rep.within_tolerance == predicate;
    if (!ok) {
      v.detail << c.name << ": predicate " << predicate << ", tail deviation " << rep.max_deviation << "; ";
    }
    v.require(ok, c.name);
    agree += ok;
  }
  v.detail << agree << "/" << table.size() << " descriptor cases agree with the expected value and the 200-term check";
}

// Criterion 7.
Point random_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 6), num(-20, 20), den(1, 9), prime_idx(0, 3), small(1, 4);
  const std::int64_t primes[] = {2, 3, 5, 7};
  Rational r(num(rng), den(rng));
  r.canonicalize();
  switch (kind(rng)) {
    case 0: return make_trivial_rational(r);
    case 1: return make_trivial_algebraic(parse_int_poly(std::vector<const char*>{"t^2-2", "t^2+1", "t^3-3t-1", "2t^2-3"}[small(rng) - 1]));
    case 2: return GenericTrivial{};
    case 3: {
      std::int64_t p = primes[prime_idx(rng)];
      return make_trivial_finite(p, mod(Integer(num(rng)), Integer(p)));
    }
    case 4: return make_real_power(Rational(1, small(rng)), r);
    case 5: {
      Rational im(num(rng), den(rng));
      im.canonicalize();
      return make_complex_fold(Rational(1, small(rng)), GaussianRational(r, im));
    }
    default: return make_padic_power(primes[prime_idx(rng)], Rational(small(rng), small(rng)), r);
  }
}

IntPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(0, 3), c(-6, 6);
  std::vector<Integer> coeffs;
  const int n = deg(rng);
  for (int k = 0; k <= n; ++k) coeffs.emplace_back(c(rng));
  return IntPoly(coeffs);
}

void seminorm_case(Verdict& v) {
  std::mt19937 rng(1000);
  const IntPoly one = IntPoly::constant(Integer(1)), zero = IntPoly::constant(Integer(0));
  int ultra = 0;
  for (int k = 0; k < 1000; ++k) {
    Point x = random_point(rng);
    IntPoly f = random_poly(rng), g = random_poly(rng);
    Magnitude ef = eval_point(x, f), eg = eval_point(x, g), efg = eval_point(x, f * g);
    Magnitude prod = mag_mul(ef, eg);
    if (is_ultrametric(x)) {
      ++ultra;
      v.require(mag_cmp(efg, prod) == Ordering::Equal, "multiplicativity at " + to_string(x));
      v.require(mag_le(eval_point(x, f + g), mag_max(ef, eg)), "ultrametric inequality at " + to_string(x));
    } else {
      v.require(mag_close(efg, prod, std::ldexp(1.0, -30)), "multiplicativity at " + to_string(x));
    }
    v.require(eval_point(x, one).is_one(), "lambda(1) = 1 at " + to_string(x));
    v.require(eval_point(x, zero).is_zero(), "lambda(0) = 0 at " + to_string(x));
  }
  v.detail << "1000 triples (" << ultra << " ultrametric)";
}

// Criterion 8.
bool independent_resolvent(const std::vector<Rational>& c, const RatMatrix& u, std::int64_t degree, std::int64_t n,
                           const Resolvent& lib) {
  const RatMatrix id = RatMatrix::identity(u.rows());
  RatMatrix x = id;
  if (!(lib.x.at(0).m == x)) return false;
  for (std::int64_t k = 1; k <= degree; ++k) {
    RatMatrix next = c[k] * id + u * x;
    // both sides of the product (1 - t u) P(t, u) reproduce det(1 - t u)
    if (!(next - u * x == c[k] * id) || !(next - x * u == c[k] * id)) return false;
    if (!(lib.x.at(k).m == next)) return false;
    x = next;
  }
  // Cayley-Hamilton: the full determinant annihilates
  if (degree >= n && !x.is_zero()) return false;
  return true;
}

void resolvent_case(Verdict& v) {
  int checked = 0;
  auto run = [&](const OperatorSpec& spec, std::int64_t degree, std::int64_t n, const std::vector<Rational>& oracle_c,
                 const std::string& name) {
    auto s = fredholm_coeffs(spec, degree, n);
    v.require(s.exact == oracle_c, name + ": coefficients");
    auto r = fredholm_resolvent(s, spec);
    v.require(r.verified, name + ": library verification");
    v.require(independent_resolvent(oracle_c, truncate(spec, n).matrix.m, degree, n, r), name + ": independent check");
    ++checked;
  };
  run(weighted_shift(), 8, 12, oracle::fredholm_by_subsets(truncate(weighted_shift(), 12).matrix.m, 8), "shift");
  std::vector<Rational> d;
  for (int i = 1; i <= 10; ++i) d.push_back(rpow(Rational(3), i));
  run(diag3(), 6, 10, oracle::product_expansion(d, 6), "diag");
  for (const auto& a : upper_triangular_blocks()) run(make_finite_rank(a), 4, 4, oracle::fredholm_by_subsets(a.m, 4), "block");
  v.detail << checked << " operators satisfy det(1 - t u) = P(t, u)(1 - t u) mod t^(D+1)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"weighted shift over Q_2", weighted_shift_case},
      {"diagonal operator diag(3^i)", diagonal_case},
      {"finite-rank crosscheck", crosscheck_case},
      {"complex folding", folding_case},
      {"spectrum of 0 in Z", membership_case},
      {"convergence predicate table", predicate_case},
      {"seminorm properties", seminorm_case},
      {"resolvent identity", resolvent_case},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first
              << "): " << v.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
