#include "brex/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "brex/errors.hpp"

namespace brex {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e
constexpr int kMaxIter = 50;

// Halley iteration on w e^w - z.
double halley(double w, double z) {
  for (int it = 0; it < kMaxIter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;  // branch point, derivative vanishes
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Series around the branch point in p = sqrt(2 (e z + 1)).
double branch_point_seed(double p) {
  return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
}

}  // namespace

double lambert_w(LambertBranch branch, double z) {
  if (std::isnan(z)) throw DomainError("Lambert W of NaN");
  // Tolerate a couple of ulps below -1/e.
  if (z < -kInvE) {
    if (z >= -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
      return -1.0;
    }
    throw DomainError("Lambert W argument " + std::to_string(z) + " < -1/e");
  }
  const double p2 = 2.0 * (std::numbers::e * z + 1.0);
  const double p = p2 > 0.0 ? std::sqrt(p2) : 0.0;

  if (branch == LambertBranch::Principal) {
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return z;
    double w;
    if (p < 0.5) {
      w = branch_point_seed(p);
    } else if (std::abs(z) < 0.25) {
      w = z - z * z + 1.5 * z * z * z;
    } else if (z > std::numbers::e) {
      const double l = std::log(z);
      w = l - std::log(l);
    } else {
      w = std::log1p(z) * 0.75;
    }
    return halley(w, z);
  }

  if (z >= 0.0) {
    throw DomainError("Lambert W_{-1} needs -1/e <= z < 0, got " + std::to_string(z));
  }
  double w;
  if (p < 0.5) {
    w = branch_point_seed(-p);
  } else {
    const double l = std::log(-z);
    w = l - std::log(-l);
  }
  return halley(w, z);
}

double lambert_wm1_from_log(double log_neg_z) {
  if (!(log_neg_z <= -1.0)) {
    throw DomainError("lambert_wm1_from_log needs log(-z) <= -1");
  }
  if (log_neg_z > -700.0) return lambert_w(LambertBranch::Lower, -std::exp(log_neg_z));
  // w + log(-w) = log(-z), solved by Newton in t = -w.
  double t = -log_neg_z + std::log(-log_neg_z);
  for (int it = 0; it < kMaxIter; ++it) {
    const double g = -t + std::log(t) - log_neg_z;
    const double step = g / (-1.0 + 1.0 / t);
    t -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * t) break;
  }
  return -t;
}

}  // namespace brex
