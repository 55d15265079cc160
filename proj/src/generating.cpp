#include "brex/generating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "brex/errors.hpp"
#include "brex/lambert.hpp"

namespace brex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string describe(const GeneratorFamily& family) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const PowerFamily& f) { os << "power:" << f.p; },
                 [&](const ShannonFamily&) { os << "shannon"; },
                 [&](const KLFamily& f) { os << "kl:" << f.y; },
                 [&](const MatchedFamily& f) { os << "matched:" << to_string(f.fidelity); },
             },
             family);
  return os.str();
}

Generator::Generator(GeneratorFamily family, double gamma, double lambda0, Constraint constraint)
    : family_(std::move(family)), gamma_(gamma), lambda0_(lambda0), constraint_(constraint) {
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw std::invalid_argument("generator needs gamma > 0");
  if (!(lambda0_ > 0.0) || !std::isfinite(lambda0_)) throw std::invalid_argument("generator needs lambda0 > 0");
  std::visit(overloaded{
                 [&](const PowerFamily& f) {
                   if (!(f.p > 1.0 && f.p <= 2.0)) throw std::invalid_argument("power generator needs p in (1, 2]");
                 },
                 [&](const ShannonFamily&) { constraint_ = Constraint::NonnegReals; },
                 [&](const KLFamily& f) {
                   if (!(f.y > 0.0) || !(f.b > 0.0)) throw std::invalid_argument("KL generator needs y > 0 and b > 0");
                   constraint_ = Constraint::NonnegReals;
                 },
                 [&](const MatchedFamily& f) {
                   if (f.a == 0.0 || !std::isfinite(f.a)) throw std::invalid_argument("matched generator needs a != 0");
                   if (f.lambda2 < 0.0) throw std::invalid_argument("matched generator needs lambda2 >= 0");
                   if (f.fidelity == FidelityKind::KL) {
                     if (!(f.a > 0.0) || !(f.b > 0.0) || f.y < 0.0) {
                       throw std::invalid_argument("matched KL generator needs a > 0, b > 0, y >= 0");
                     }
                     constraint_ = Constraint::NonnegReals;
                   }
                   if (f.lambda2 == 0.0 && f.fidelity == FidelityKind::KL && f.y == 0.0) {
                     throw std::invalid_argument("matched KL generator with y = 0 and lambda2 = 0 is not strictly convex");
                   }
                 },
             },
             family_);
  compute_bounds();
}

void Generator::check_domain(double x) const {
  if (std::isnan(x)) throw DomainError("generator evaluated at NaN");
  if (constraint_ == Constraint::NonnegReals && x < 0.0) {
    throw DomainError("generator evaluated at x = " + std::to_string(x) + " outside the nonnegative orthant");
  }
}

double Generator::value(double x) const {
  check_domain(x);
  return gamma_ * std::visit(overloaded{
                                 [&](const PowerFamily& f) {
                                   return std::pow(std::abs(x), f.p) / (f.p * (f.p - 1.0));
                                 },
                                 [&](const ShannonFamily&) {
                                   return x == 0.0 ? 1.0 : x * std::log(x) - x + 1.0;
                                 },
                                 [&](const KLFamily& f) {
                                   return x + f.b - f.y * std::log(x + f.b);
                                 },
                                 [&](const MatchedFamily& f) {
                                   return f_value(f.fidelity, f.a * x, f.y, f.b) + 0.5 * f.lambda2 * x * x;
                                 },
                             },
                             family_);
}

double Generator::d1(double x) const {
  check_domain(x);
  return gamma_ * std::visit(overloaded{
                                 [&](const PowerFamily& f) {
                                   const double m = std::pow(std::abs(x), f.p - 1.0) / (f.p - 1.0);
                                   return x < 0.0 ? -m : m;
                                 },
                                 [&](const ShannonFamily&) { return x == 0.0 ? -kInf : std::log(x); },
                                 [&](const KLFamily& f) { return 1.0 - f.y / (x + f.b); },
                                 [&](const MatchedFamily& f) {
                                   return f.a * f_d1(f.fidelity, f.a * x, f.y, f.b) + f.lambda2 * x;
                                 },
                             },
                             family_);
}

double Generator::d2(double x) const {
  check_domain(x);
  return gamma_ * std::visit(overloaded{
                                 [&](const PowerFamily& f) {
                                   if (f.p == 2.0) return 1.0;
                                   return x == 0.0 ? kInf : std::pow(std::abs(x), f.p - 2.0);
                                 },
                                 [&](const ShannonFamily&) { return x == 0.0 ? kInf : 1.0 / x; },
                                 [&](const KLFamily& f) { return f.y / ((x + f.b) * (x + f.b)); },
                                 [&](const MatchedFamily& f) {
                                   return f.a * f.a * f_d2(f.fidelity, f.a * x, f.y, f.b) + f.lambda2;
                                 },
                             },
                             family_);
}

double Generator::bregman(double x, double z) const {
  check_domain(x);
  check_domain(z);
  if (x == z) return 0.0;
  const double slope = d1(z);
  if (!std::isfinite(slope)) throw DomainError("Bregman distance needs psi'(z) finite");
  return std::max(0.0, value(x) - value(z) - slope * (x - z));
}

double Generator::polish_alpha(double alpha) const {
  if (alpha == 0.0) return alpha;
  double best = alpha;
  double best_res = std::abs(bregman(0.0, alpha) - lambda0_);
  double z = alpha;
  for (int it = 0; it < 4 && best_res > 0.0; ++it) {
    const double slope = d2(z) * z;
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double next = z - (bregman(0.0, z) - lambda0_) / slope;
    if (!std::isfinite(next) || (next > 0.0) != (alpha > 0.0)) break;
    const double res = std::abs(bregman(0.0, next) - lambda0_);
    z = next;
    if (res < best_res) {
      best = next;
      best_res = res;
    } else {
      break;
    }
  }
  return best;
}

double Generator::bisect_alpha(double direction) const {
  double lo = 0.0;
  double hi = std::min(1.0, lambda0_ / gamma_);
  int doublings = 0;
  while (bregman(0.0, direction * hi) <= lambda0_) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200 || !std::isfinite(hi)) {
      throw ConvergenceError("no bracket for the lambda0-sublevel bound of " + describe(family_));
    }
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double diff = bregman(0.0, direction * mid) - lambda0_;
    if (std::abs(diff) <= 1e-12 * std::max(1.0, lambda0_)) return direction * mid;
    (diff < 0.0 ? lo : hi) = mid;
  }
  return direction * 0.5 * (lo + hi);
}

void Generator::compute_bounds() {
  const bool reals = constraint_ == Constraint::Reals;
  std::visit(overloaded{
                 [&](const PowerFamily& f) {
                   const double a = std::pow(f.p * lambda0_ / gamma_, 1.0 / f.p);
                   alpha_plus_ = a;
                   alpha_minus_ = reals ? -a : 0.0;
                 },
                 [&](const ShannonFamily&) {
                   alpha_plus_ = lambda0_ / gamma_;
                   alpha_minus_ = 0.0;
                 },
                 [&](const KLFamily& f) {
                   // -b exp(-kappa) with kappa = lambda0/(y gamma) + log b + 1
                   const double t = lambda0_ / (f.y * gamma_) + 1.0;
                   double w;
                   if (t > 700.0) {
                     w = -std::exp(-t);  // W0(z) ~ z near 0
                   } else {
                     w = lambert_w(LambertBranch::Principal, -std::exp(-t));
                   }
                   if (w == 0.0) throw ConvergenceError("KL generator sublevel bound overflows");
                   alpha_plus_ = -f.b / w - f.b;
                   alpha_minus_ = 0.0;
                 },
                 [&](const MatchedFamily&) {
                   alpha_plus_ = bisect_alpha(1.0);
                   alpha_minus_ = reals ? bisect_alpha(-1.0) : 0.0;
                 },
             },
             family_);
  if (!std::holds_alternative<MatchedFamily>(family_)) {
    alpha_plus_ = polish_alpha(alpha_plus_);
    if (reals) alpha_minus_ = polish_alpha(alpha_minus_);
  }
  slope_plus_ = d1(alpha_plus_);
  slope_minus_ = reals ? d1(alpha_minus_) : 0.0;
  const double d1_zero = d1(0.0);
  if (std::isfinite(d1_zero)) {
    ell_plus_ = slope_plus_ - d1_zero;
  } else {
    ell_plus_.reset();
  }
  if (reals) {
    ell_minus_ = slope_minus_ - d1_zero;
  } else {
    ell_minus_.reset();
  }
}

double Generator::beta(double x) const {
  check_domain(x);
  if (x == 0.0) return 0.0;
  if (x >= alpha_plus_ || x <= alpha_minus_) return lambda0_;
  const double slope = x > 0.0 ? slope_plus_ : slope_minus_;
  const double alpha = x > 0.0 ? alpha_plus_ : alpha_minus_;
  const double v = std::visit(
      overloaded{
          [&](const PowerFamily& f) {
            const double ax = std::abs(x);
            return gamma_ * ax * (std::pow(std::abs(alpha), f.p - 1.0) - std::pow(ax, f.p - 1.0) / f.p) / (f.p - 1.0);
          },
          [&](const ShannonFamily&) { return gamma_ * x * (std::log(alpha / x) + 1.0); },
          [&](const KLFamily& f) { return gamma_ * f.y * (std::log1p(x / f.b) - x / (alpha + f.b)); },
          [&](const MatchedFamily&) { return value(0.0) - value(x) + slope * x; },
      },
      family_);
  return std::clamp(v, 0.0, lambda0_);
}

double numeric_inf_curvature(const Generator& g) {
  double best = kInf;
  auto scan = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    constexpr int kPoints = 400;
    double arg = lo;
    for (int i = 0; i <= kPoints; ++i) {
      double t = lo + (hi - lo) * static_cast<double>(i) / kPoints;
      if (t == 0.0) t = (i == 0 ? 1e-12 : -1e-12) * (hi - lo);
      const double v = g.d2(t);
      if (v < best) {
        best = v;
        arg = t;
      }
    }
    // golden refinement around the best grid point
    const double h = (hi - lo) / kPoints;
    double a = std::max(lo, arg - h), b = std::min(hi, arg + h);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    auto safe = [&](double t) { return t == 0.0 ? kInf : g.d2(t); };
    double fc = safe(c), fd = safe(d);
    for (int it = 0; it < 80; ++it) {
      if (fc < fd) {
        b = d; d = c; fd = fc; c = b - r * (b - a); fc = safe(c);
      } else {
        a = c; c = d; fc = fd; d = a + r * (b - a); fd = safe(d);
      }
    }
    best = std::min({best, fc, fd});
  };
  scan(0.0, g.alpha_plus());
  if (g.alpha_minus() < 0.0) scan(g.alpha_minus(), 0.0);
  return best;
}

double Generator::inf_curvature() const {
  return std::visit(overloaded{
                        [&](const PowerFamily& f) {
                          const double a = std::max(alpha_plus_, -alpha_minus_);
                          return f.p == 2.0 ? gamma_ : gamma_ * std::pow(a, f.p - 2.0);
                        },
                        [&](const ShannonFamily&) { return gamma_ / alpha_plus_; },
                        [&](const KLFamily& f) {
                          return gamma_ * f.y / ((alpha_plus_ + f.b) * (alpha_plus_ + f.b));
                        },
                        [&](const MatchedFamily&) { return numeric_inf_curvature(*this); },
                    },
                    family_);
}

std::optional<double> Generator::sup_curvature() const {
  return std::visit(overloaded{
                        [&](const PowerFamily& f) -> std::optional<double> {
                          if (f.p == 2.0) return gamma_;
                          return std::nullopt;
                        },
                        [&](const ShannonFamily&) -> std::optional<double> { return std::nullopt; },
                        [&](const KLFamily& f) -> std::optional<double> { return gamma_ * f.y / (f.b * f.b); },
                        [&](const MatchedFamily& f) -> std::optional<double> {
                          return gamma_ * (f.a * f.a * brex::curvature_sup(f.fidelity, f.y, f.b) + f.lambda2);
                        },
                    },
                    family_);
}

}  // namespace brex
