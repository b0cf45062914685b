#include "berkline/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <numeric>

#include "berkline/error.hpp"

namespace berkline {

IntPoly parse_int_poly(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::InvalidArgument, "empty polynomial");

  auto bad = [&]() { fail(ErrorCode::InvalidArgument, "cannot parse polynomial '" + std::string(text) + "'"); };
  std::vector<Integer> coeffs;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      bad();
    }
    first = false;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    Integer coef = 1;
    bool have_coef = i > start;
    if (have_coef) coef = parse_integer(s.substr(start, i - start));
    if (i < s.size() && s[i] == '*') {
      if (!have_coef) bad();
      ++i;
    }
    std::size_t power = 0;
    if (i < s.size() && (s[i] == 't' || s[i] == 'x')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t ps = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == ps) bad();
        power = std::stoul(s.substr(ps, i - ps));
      }
    } else if (!have_coef) {
      bad();
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') bad();
    if (coeffs.size() <= power) coeffs.resize(power + 1, Integer(0));
    coeffs[power] += sign * coef;
  }
  return IntPoly(std::move(coeffs));
}

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int d = p.degree(); d >= 0; --d) {
    const Integer& c = p.coeffs()[d];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    if (d == 0 || mag != 1) out += to_string(mag);
    if (d >= 1) out += "t";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, c);
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> v;
  for (const auto& c : p.coeffs()) v.push_back(Integer(c / g));
  return IntPoly(std::move(v));
}

namespace {

// Exact remainder of a by b in Z[t], multiplying a by powers of lc(b) as needed.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  std::vector<Integer> r = a.coeffs();
  const Integer& lb = b.leading();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    Integer lr = r.back();
    for (auto& c : r) c *= lb;
    for (int k = 0; k <= db; ++k) r[dr - db + k] -= lr * b.coeffs()[k];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return IntPoly(std::move(r));
}

}  // namespace

bool divides(const IntPoly& divisor, const IntPoly& dividend) {
  if (divisor.is_zero()) return dividend.is_zero();
  if (dividend.is_zero()) return true;
  if (divisor.degree() > dividend.degree()) return false;
  // Over Q divisibility is decided by the pseudo-remainder; for primitive divisors
  // Gauss's lemma makes this the same as divisibility in Z[t].
  return pseudo_remainder(dividend, primitive_part(divisor)).is_zero();
}

Rational evaluate(const IntPoly& p, const Rational& x) { return p.evaluate<Rational>(x, Rational(0)); }

Integer evaluate_mod(const IntPoly& p, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = mod(acc * x + *it, m);
  return acc;
}

RatPoly to_rat_poly(const IntPoly& p) {
  std::vector<Rational> v(p.coeffs().begin(), p.coeffs().end());
  return RatPoly(std::move(v));
}

IntPoly clear_denominators(const RatPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, c.get_den());
  std::vector<Integer> v;
  for (const auto& c : p.coeffs()) v.push_back(Integer(c.get_num() * (l / c.get_den())));
  return primitive_part(IntPoly(std::move(v)));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(std::max(0, a.degree() - db + 1), Rational(0));
  while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
    int dr = static_cast<int>(r.size()) - 1;
    Rational f = r.back() / b.leading();
    q[dr - db] = f;
    for (int k = 0; k <= db; ++k) r[dr - db + k] -= f * b.coeffs()[k];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  Rational lc = p.leading();
  std::vector<Rational> v;
  for (const auto& c : p.coeffs()) v.push_back(Rational(c / lc));
  return RatPoly(std::move(v));
}

RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return monic(p);
  RatPoly g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

int count_real_roots(const RatPoly& p) {
  if (p.degree() <= 0) return 0;
  std::vector<RatPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto changes = [&](bool at_plus_infinity) {
    int count = 0;
    int prev = 0;
    for (const auto& q : seq) {
      int s = sgn(q.leading());
      if (!at_plus_infinity && q.degree() % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

namespace {

using ModPoly = std::vector<std::int64_t>;

void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // f is monic.
  const std::size_t df = f.size() - 1;
  for (std::size_t d = r.size(); d-- > df;) {
    std::int64_t c = r[d];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= df; ++k) r[d - df + k] = ((r[d - df + k] - c * f[k]) % p + p) % p;
  }
  mp_trim(r);
  return r;
}

ModPoly mp_rem(ModPoly a, const ModPoly& b, std::int64_t p) {
  Integer inv_lb = mod_inverse(Integer(static_cast<long>(b.back())), Integer(static_cast<long>(p)));
  std::int64_t il = inv_lb.get_si();
  const std::size_t db = b.size() - 1;
  mp_trim(a);
  while (a.size() >= b.size()) {
    std::int64_t f = a.back() * il % p;
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] = ((a[shift + k] - f * b[k]) % p + p) % p;
    mp_trim(a);
  }
  return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, std::int64_t p) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    ModPoly r = mp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f (monic mod p, degree n) is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= n/2.
bool irreducible_mod_p(const IntPoly& f, std::int64_t p) {
  Integer P(static_cast<long>(p));
  Integer inv_lc = mod_inverse(mod(f.leading(), P), P);
  ModPoly g;
  for (const auto& c : f.coeffs()) g.push_back(mod(c * inv_lc, P).get_si());
  const int n = f.degree();
  ModPoly x{0, 1};
  ModPoly power = x;
  for (int i = 1; i <= n / 2; ++i) {
    // power <- power^p mod g
    ModPoly base = power;
    ModPoly acc{1};
    for (std::int64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = mp_mulmod(acc, base, g, p);
      base = mp_mulmod(base, base, g, p);
    }
    power = acc;
    ModPoly diff = power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    mp_trim(diff);
    if (diff.empty()) return false;
    ModPoly h = mp_gcd(g, diff, p);
    if (h.size() > 1) return false;
  }
  return true;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  Integer m = abs(n);
  std::vector<std::pair<Integer, int>> factors;
  for (Integer d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<Integer> divs{1};
  for (const auto& [q, e] : factors) {
    std::size_t existing = divs.size();
    Integer pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= q;
      for (std::size_t j = 0; j < existing; ++j) divs.push_back(divs[j] * pw);
    }
  }
  return divs;
}

// Lagrange interpolation through (xs[i], ys[i]) over Q.
RatPoly interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  RatPoly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    RatPoly basis = RatPoly::constant(Rational(1));
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * RatPoly({Rational(-xs[j]), Rational(1)});
      denom *= Rational(xs[i] - xs[j]);
    }
    acc = acc + RatPoly::constant(Rational(ys[i]) / denom) * basis;
  }
  return acc;
}

constexpr int kKroneckerMaxDegree = 8;
constexpr long kKroneckerMaxCombinations = 4'000'000;

bool kronecker_irreducible(const IntPoly& f) {
  const int n = f.degree();
  struct Sample {
    Integer x;
    std::vector<Integer> divisors;
  };
  std::vector<Sample> samples;
  for (long a = 0; a <= 40; ++a) {
    for (long x : {a, -a}) {
      if (a == 0 && x != 0) continue;
      Integer value = f.evaluate<Integer>(Integer(x), Integer(0));
      if (value == 0) return false;  // linear factor t - x
      if (abs(value) > Integer("1000000000000")) continue;
      samples.push_back({Integer(x), positive_divisors(value)});
    }
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.divisors.size() < b.divisors.size(); });
  for (int d = 1; d <= n / 2; ++d) {
    if (static_cast<int>(samples.size()) < d + 1) fail(ErrorCode::UnsupportedDescriptor, "irreducibility: too few sample points");
    std::vector<Integer> xs;
    std::vector<const std::vector<Integer>*> choices;
    long combos = 1;
    for (int k = 0; k <= d; ++k) {
      xs.push_back(samples[k].x);
      choices.push_back(&samples[k].divisors);
      combos *= static_cast<long>(samples[k].divisors.size()) * (k == 0 ? 1 : 2);
      if (combos > kKroneckerMaxCombinations) {
        fail(ErrorCode::UnsupportedDescriptor, "irreducibility check exceeds Kronecker search budget");
      }
    }
    std::vector<std::size_t> idx(d + 1, 0);
    std::vector<int> sign(d + 1, 1);
    while (true) {
      std::vector<Integer> ys;
      for (int k = 0; k <= d; ++k) ys.push_back(sign[k] * (*choices[k])[idx[k]]);
      RatPoly g = interpolate(xs, ys);
      if (g.degree() == d) {
        bool integral = std::all_of(g.coeffs().begin(), g.coeffs().end(),
                                    [](const Rational& c) { return c.get_den() == 1; });
        if (integral) {
          std::vector<Integer> gi;
          for (const auto& c : g.coeffs()) gi.push_back(c.get_num());
          if (divides(IntPoly(std::move(gi)), f)) return false;
        }
      }
      // odometer over divisor choices and signs (first sign fixed)
      int k = 0;
      for (; k <= d; ++k) {
        if (++idx[k] < choices[k]->size()) break;
        idx[k] = 0;
        if (k > 0 && sign[k] == 1) {
          sign[k] = -1;
          break;
        }
        sign[k] = 1;
      }
      if (k > d) break;
    }
  }
  return true;
}

}  // namespace

bool is_irreducible(const IntPoly& p) {
  if (p.degree() < 1) fail(ErrorCode::InvalidArgument, "irreducibility of a constant");
  if (content(p) != 1) return false;
  if (p.degree() == 1) return true;
  if (p.coeffs().front() == 0) return false;
  int tested = 0;
  for (std::int64_t q : primes_up_to(400)) {
    if (p.leading() % q == 0) continue;
    if (irreducible_mod_p(p, q)) return true;
    if (++tested >= 40) break;
  }
  if (p.degree() > kKroneckerMaxDegree) {
    fail(ErrorCode::UnsupportedDescriptor, "cannot certify irreducibility of " + to_string(p));
  }
  return kronecker_irreducible(p);
}

}  // namespace berkline
