#include "brex/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace brex {

namespace {

double polish(double z, double a3, double a2, double a1, double a0) {
  for (int it = 0; it < 3; ++it) {
    const double f = ((a3 * z + a2) * z + a1) * z + a0;
    const double df = (3.0 * a3 * z + 2.0 * a2) * z + a1;
    if (df == 0.0 || !std::isfinite(df)) break;
    const double next = z - f / df;
    const double fn = ((a3 * next + a2) * next + a1) * next + a0;
    if (!(std::abs(fn) < std::abs(f))) break;
    z = next;
  }
  return z;
}

}  // namespace

std::vector<double> cubic_real_roots(double a3, double a2, double a1, double a0) {
  if (a3 == 0.0) throw std::invalid_argument("cubic_real_roots: leading coefficient is zero");
  const double b = a2 / a3;
  const double c = a1 / a3;
  const double d = a0 / a3;

  // z = t - b/3  ->  t^3 + P t + Q = 0
  const double shift = b / 3.0;
  const double P = c - b * b / 3.0;
  const double Q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double half_q = Q / 2.0;
  const double third_p = P / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  const double scale = std::max(half_q * half_q, std::abs(third_p * third_p * third_p));

  std::vector<double> t;
  if (scale == 0.0) {
    t.push_back(0.0);
  } else if (std::abs(disc) <= 1e-12 * scale) {
    const double u = std::cbrt(-half_q);
    t.push_back(2.0 * u);
    t.push_back(-u);
  } else if (disc > 0.0) {
    // Pick the sign that avoids cancellation, then v = -P / (3u).
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-half_q - std::copysign(sq, half_q));
    const double v = u != 0.0 ? -third_p / u : 0.0;
    t.push_back(u + v);
  } else {
    const double r = std::sqrt(-third_p);
    const double cos_phi = std::clamp(-half_q / (r * r * r), -1.0, 1.0);
    const double phi = std::acos(cos_phi);
    for (int k = 0; k < 3; ++k) {
      t.push_back(2.0 * r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0));
    }
  }

  std::vector<double> roots;
  for (double ti : t) roots.push_back(polish(ti - shift, a3, a2, a1, a0));
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double z : roots) {
    if (out.empty() || std::abs(z - out.back()) > 1e-12 * std::max(1.0, std::abs(z))) out.push_back(z);
  }
  return out;
}

}  // namespace brex
