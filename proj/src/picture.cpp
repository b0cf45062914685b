#include "berkline/picture.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "berkline/error.hpp"

namespace berkline {

PicturePoint real_zero_position(const Rational& upsilon) {
  if (upsilon <= 0 || upsilon > 1) fail(ErrorCode::InvalidArgument, "upsilon must lie in (0,1]");
  return {"0_R^" + to_string(upsilon), 2.0 * (1.0 - upsilon.get_d()), 0.0};
}

PicturePoint padic_zero_position(std::size_t prime_index, std::int64_t q, const Rational& omega) {
  if (prime_index < 1) fail(ErrorCode::InvalidArgument, "prime index starts at 1");
  if (omega <= 0) fail(ErrorCode::InvalidArgument, "omega must be > 0");
  const double r = 1.0 / static_cast<double>(prime_index);
  const double w = omega.get_d();
  // omega -> 0 approaches 0_Q at angle pi, omega -> inf approaches 0_q^inf at 2 pi
  const double theta = std::numbers::pi * (1.0 + w / (1.0 + w));
  return {"0_" + std::to_string(q) + "^" + to_string(omega), 2.0 + r + r * std::cos(theta), r * std::sin(theta)};
}

double omega_threshold(std::int64_t k, const Rational& epsilon, std::int64_t p) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (epsilon <= 0 || epsilon >= 1) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0,1)");
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return std::log1p(-epsilon.get_d()) / (-static_cast<double>(k) * std::log(static_cast<double>(p)));
}

Picture mz_structure(std::int64_t primes_upto, const std::vector<Rational>& upsilon_samples,
                     const std::vector<Rational>& omega_samples,
                     const std::vector<std::pair<std::int64_t, Rational>>& thresholds) {
  if (primes_upto < 2) fail(ErrorCode::InvalidArgument, "primes_upto must be >= 2");
  Picture pic;
  pic.zero_q = {"0_Q", 2.0, 0.0};
  for (const auto& u : upsilon_samples) pic.real_branch.emplace_back(u, real_zero_position(u));
  auto primes = primes_up_to(primes_upto);
  for (std::size_t j = 1; j <= primes.size(); ++j) {
    PrimeArc arc;
    arc.q = primes[j - 1];
    arc.index = j;
    arc.radius = 1.0 / static_cast<double>(j);
    arc.center_x = 2.0 + arc.radius;
    for (const auto& w : omega_samples) arc.samples.emplace_back(w, padic_zero_position(j, arc.q, w));
    arc.endpoint = {"0_" + std::to_string(arc.q) + "^inf", 2.0 + 2.0 * arc.radius, 0.0};
    pic.arcs.push_back(std::move(arc));
  }
  for (const auto& [k, eps] : thresholds) {
    for (std::int64_t p : primes) pic.thresholds.push_back({k, eps, p, omega_threshold(k, eps, p)});
  }
  return pic;
}

std::string picture_svg(const Picture& picture) {
  const double scale = 100.0;
  const double pad = 30.0;
  auto X = [&](double x) { return pad + scale * x; };
  auto Y = [&](double y) { return pad + scale * (1.1 - y); };
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * pad + scale * 4.2 << "\" height=\""
     << 2 * pad + scale * 2.4 << "\">\n";
  os << "  <line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(2) << "\" y2=\"" << Y(0)
     << "\" stroke=\"black\"/>\n";
  for (const auto& arc : picture.arcs) {
    os << "  <path d=\"M " << X(2) << " " << Y(0) << " A " << scale * arc.radius << " " << scale * arc.radius
       << " 0 0 0 " << X(2 + 2 * arc.radius) << " " << Y(0) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "  <circle cx=\"" << X(arc.endpoint.x) << "\" cy=\"" << Y(0) << "\" r=\"2\"/>\n";
    os << "  <text x=\"" << X(arc.endpoint.x) << "\" y=\"" << Y(0) - 5 << "\" font-size=\"9\">" << arc.endpoint.label
       << "</text>\n";
    for (const auto& [w, pt] : arc.samples) {
      os << "  <circle cx=\"" << X(pt.x) << "\" cy=\"" << Y(pt.y) << "\" r=\"1.5\" fill=\"gray\"/>\n";
    }
  }
  for (const auto& [u, pt] : picture.real_branch) {
    os << "  <circle cx=\"" << X(pt.x) << "\" cy=\"" << Y(pt.y) << "\" r=\"2\"/>\n";
    os << "  <text x=\"" << X(pt.x) << "\" y=\"" << Y(pt.y) - 5 << "\" font-size=\"9\">" << pt.label << "</text>\n";
  }
  os << "  <circle cx=\"" << X(2) << "\" cy=\"" << Y(0) << "\" r=\"2.5\"/>\n";
  os << "  <text x=\"" << X(2) << "\" y=\"" << Y(0) - 8 << "\" font-size=\"9\">0_Q</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace berkline
