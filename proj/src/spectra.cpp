#include "berkline/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "overloaded.hpp"

namespace berkline {

namespace {

using Cx = std::complex<long double>;

Point image_in_branch(const Integer& m, const BasePoint& b) {
  return std::visit(detail::overloaded{
                        [&](const ZeroQ&) { return make_trivial_rational(Rational(m)); },
                        [&](const ZeroR& z) { return make_real_power(z.upsilon, Rational(m)); },
                        [&](const ZeroP& z) { return make_padic_power(z.p, z.omega, Rational(m)); },
                        [&](const ZeroPInf& z) { return make_trivial_finite(z.p, mod(m, Integer(z.p))); },
                    },
                    b);
}

long double to_ld(const Rational& q) {
  return static_cast<long double>(q.get_d());
}

Cx horner(const std::vector<long double>& a, Cx z) {
  Cx v = 0;
  for (std::size_t k = a.size(); k-- > 0;) v = v * z + a[k];
  return v;
}

Cx horner_deriv(const std::vector<long double>& a, Cx z) {
  Cx v = 0;
  for (std::size_t k = a.size(); k-- > 1;) v = v * z + a[k] * static_cast<long double>(k);
  return v;
}

std::vector<Cx> aberth(const std::vector<long double>& a) {
  const std::size_t n = a.size() - 1;
  long double bound = 0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k] / a[n]));
  bound += 1;
  std::vector<Cx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double th = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
    z[k] = std::polar(bound, th);
  }
  for (int it = 0; it < 1000; ++it) {
    long double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Cx ratio = horner(a, z[k]) / horner_deriv(a, z[k]);
      Cx s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s += Cx(1) / (z[k] - z[j]);
      Cx w = ratio / (Cx(1) - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

Rational dyadic(long double x) {
  constexpr double scale = 1099511627776.0;  // 2^40
  Integer n(std::nearbyint(static_cast<double>(x * scale)));
  return make_rational(n, Integer(1) << 40);
}

}  // namespace

SpectrumDescription spectrum_integer(const Integer& m) {
  SpectrumDescription d;
  const std::string ms = to_string(m);
  d.families.push_back("mu_K(" + ms + " 1_K) for every minimal field K");
  d.points.push_back(make_trivial_rational(Rational(m)));
  d.points.push_back(make_real_power(Rational(1), Rational(m)));
  for (std::int64_t p : {2, 3, 5, 7}) {
    d.points.push_back(make_padic_power(p, Rational(1), Rational(m)));
    d.points.push_back(make_trivial_finite(p, mod(m, Integer(p))));
  }
  d.contains = [m](const Point& x) { return points_equal(x, image_in_branch(m, base_point(x))).equal; };
  return d;
}

GaussMatrix conjugate(const GaussMatrix& a) {
  GaussMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).conj();
  return out;
}

std::vector<Point> spectrum_complex_matrix(const GaussMatrix& a, std::size_t max_dim) {
  if (!a.square() || a.rows() == 0) fail(ErrorCode::InvalidArgument, "spectrum of a non-square or empty matrix");
  if (a.rows() > max_dim) fail(ErrorCode::InvalidArgument, "matrix dimension exceeds " + std::to_string(max_dim));
  auto cp = charpoly_berkowitz(a);
  // P * conj(P) is real and has the roots of P together with their conjugates
  std::vector<Rational> q(2 * cp.size() - 1, Rational(0));
  for (std::size_t i = 0; i < cp.size(); ++i)
    for (std::size_t j = 0; j < cp.size(); ++j) q[i + j] += (cp[i] * cp[j].conj()).re;
  RatPoly sf = squarefree_part(RatPoly(q));
  const int real_count = count_real_roots(sf);
  std::vector<long double> c;
  for (const auto& x : sf.coeffs()) c.push_back(to_ld(x));

  std::vector<Cx> roots;
  if (sf.degree() == 1) {
    roots.push_back(Cx(-c[0] / c[1], 0));
  } else if (sf.degree() > 1) {
    roots = aberth(c);
  }
  for (auto& z : roots) {
    Cx step = 0;
    for (int it = 0; it < 4; ++it) {
      step = horner(c, z) / horner_deriv(c, z);
      z -= step;
    }
    if (!(std::abs(step) <= 1e-10L * std::max<long double>(1, std::abs(z)))) {
      fail(ErrorCode::IllConditioned, "eigenvalue refinement did not settle");
    }
  }
  std::sort(roots.begin(), roots.end(), [](Cx x, Cx y) { return std::abs(x.imag()) < std::abs(y.imag()); });
  const auto rc = static_cast<std::size_t>(real_count);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const long double tol = 1e-7L * std::max<long double>(1, std::abs(roots[k]));
    if ((k < rc) != (std::abs(roots[k].imag()) < tol)) fail(ErrorCode::IllConditioned, "cannot separate real eigenvalues");
  }

  std::vector<Point> out;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    GaussianRational z(dyadic(roots[k].real()), k < rc ? Rational(0) : dyadic(std::abs(roots[k].imag())));
    Point pt = make_complex_fold(Rational(1), z);
    bool seen = std::any_of(out.begin(), out.end(), [&](const Point& y) {
      const auto& w = std::get<ComplexFold>(y).z;
      return w == z;
    });
    if (!seen) out.push_back(pt);
  }
  std::sort(out.begin(), out.end(), [](const Point& x, const Point& y) {
    const auto& a = std::get<ComplexFold>(x).z;
    const auto& b = std::get<ComplexFold>(y).z;
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });
  return out;
}

CcSpectrum spectrum_cc_operator(const OperatorSpec& spec, std::int64_t degree, std::int64_t truncation, int digits) {
  CcSpectrum out;
  out.series = fredholm_coeffs(spec, degree, truncation, digits);
  NewtonPolygon ng = newton_polygon(out.series);
  out.radius = spectral_radius(spec, std::max<std::int64_t>(1, std::min<std::int64_t>(6, truncation / 2)), truncation);

  // lift zeros of the full truncation polynomial, keep those the certified polygon accounts for
  auto all = find_rational_zeros(truncation_determinant(spec, truncation), spec.p, digits);
  const std::int64_t p = spec.p;
  auto& d = out.spectrum;
  d.points.push_back(make_padic_power(p, Rational(1), Rational(0)));
  d.families.push_back("0 in Q_p (no completely continuous operator is invertible)");
  for (const auto& seg : ng.segments) {
    std::int64_t need = seg.length;
    const Rational zero_val = -seg.slope;
    for (auto& z : all) {
      if (need == 0) break;
      if (z.valuation != zero_val || z.multiplicity == 0) continue;
      if (z.root) {
        out.zeros.push_back(z);
        d.points.push_back(make_padic_power(p, Rational(1), z.root->inverse()));
        z.multiplicity = 0;
        --need;
      } else {
        std::int64_t take = std::min(need, z.multiplicity);
        ZeroReport part = z;
        part.multiplicity = take;
        out.zeros.push_back(part);
        d.magnitude_only.push_back({Magnitude::exp(Rational(p), zero_val), take, z.note});
        z.multiplicity -= take;
        need -= take;
      }
    }
    if (need > 0) {
      // the truncated polygon vouches for zeros that the truncation polynomial places elsewhere
      d.magnitude_only.push_back({Magnitude::exp(Rational(p), zero_val), need, "zero magnitude from the Newton polygon"});
    }
  }
  const std::vector<Point> explicit_points = d.points;
  d.contains = [explicit_points](const Point& x) {
    return std::any_of(explicit_points.begin(), explicit_points.end(),
                       [&](const Point& y) { return points_equal(x, y).equal; });
  };
  return out;
}

Crosscheck crosscheck_finite_rank(const PadicMatrix& a) {
  const auto k = static_cast<std::int64_t>(a.size());
  if (k < 1 || k > 6) fail(ErrorCode::InvalidArgument, "crosscheck needs a block of size 1..6");
  Crosscheck out;
  OperatorSpec spec = make_finite_rank(a);
  CcSpectrum cc = spectrum_cc_operator(spec, k, k);
  for (std::size_t i = 1; i < cc.spectrum.points.size(); ++i) out.from_fredholm.push_back(abs_point(cc.spectrum.points[i]));
  for (const auto& m : cc.spectrum.magnitude_only)
    for (std::int64_t c = 0; c < m.count; ++c) out.from_fredholm.push_back(m.magnitude);

  std::vector<ExtRational> vals;
  for (const auto& c : charpoly_faddeev(a.m)) {
    vals.push_back(c == 0 ? ExtRational::infinity() : ExtRational(Rational(padic_valuation(c, a.p))));
  }
  out.from_charpoly = nonzero_root_magnitudes(vals, a.p);

  auto less = [](const Magnitude& x, const Magnitude& y) { return mag_less(x, y); };
  std::sort(out.from_fredholm.begin(), out.from_fredholm.end(), less);
  std::sort(out.from_charpoly.begin(), out.from_charpoly.end(), less);
  out.agree = out.from_fredholm.size() == out.from_charpoly.size() &&
              std::equal(out.from_fredholm.begin(), out.from_fredholm.end(), out.from_charpoly.begin(),
                         [](const Magnitude& x, const Magnitude& y) { return mag_cmp(x, y) == Ordering::Equal; });
  return out;
}

}  // namespace berkline
