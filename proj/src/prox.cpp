#include "brex/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brex/cubic.hpp"
#include "brex/lambert.hpp"

namespace brex {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Sign changes of h on a mixed uniform / geometric grid of [lo, hi] (0 excluded),
// each refined by bisection.
template <class H>
std::vector<double> bracket_roots(H h, double lo, double hi) {
  std::vector<double> grid;
  constexpr int kUniform = 200;
  constexpr int kGeometric = 60;
  for (int i = 0; i <= kUniform; ++i) grid.push_back(lo + (hi - lo) * i / kUniform);
  const double span = std::max(std::abs(lo), std::abs(hi));
  const double sign = hi > 0.0 ? 1.0 : -1.0;
  for (int i = 0; i < kGeometric; ++i) {
    grid.push_back(sign * span * std::pow(10.0, -12.0 + 12.0 * i / kGeometric));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::remove(grid.begin(), grid.end(), 0.0), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> roots;
  double prev = grid.front();
  double hprev = h(prev);
  if (hprev == 0.0) roots.push_back(prev);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = grid[i];
    const double hcur = h(cur);
    if (hcur == 0.0) {
      roots.push_back(cur);
    } else if (hprev != 0.0 && (hprev < 0.0) != (hcur < 0.0)) {
      double a = prev, b = cur, ha = hprev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double hm = h(mid);
        if (hm == 0.0) {
          a = b = mid;
          break;
        }
        if ((hm < 0.0) == (ha < 0.0)) {
          a = mid;
          ha = hm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev = cur;
    hprev = hcur;
  }
  return roots;
}

// Positive-side S_x in closed form where available; c = x - rho psi'(alpha+).
bool closed_form_positive(const Generator& g, double rho, double c, std::vector<double>& out) {
  const double rg = rho * g.gamma();
  return std::visit(
      overloaded{
          [&](const PowerFamily& f) {
            if (f.p == 2.0) {
              if (rg != 1.0) out.push_back(c / (1.0 - rg));
              return true;
            }
            if (f.p == 1.5) {
              const double disc = rg * rg + c;
              if (disc >= 0.0) {
                const double s = std::sqrt(disc);
                for (double z : {rg + s, rg - s}) out.push_back(z * z * (z < 0.0 ? -1.0 : 1.0));
              }
              return true;
            }
            if (std::abs(f.p - 4.0 / 3.0) < 1e-15) {
              for (double z : cubic_real_roots(1.0, 0.0, -3.0 * rg, -c)) out.push_back(z * z * z);
              return true;
            }
            return false;
          },
          [&](const ShannonFamily&) {
            // u = -rho gamma W_k(-exp(-s)), s = c / (rho gamma) + log(rho gamma)
            const double log_neg_z = -(c / rg + std::log(rg));
            if (log_neg_z > -1.0) return true;
            if (log_neg_z < -700.0) {
              out.push_back(rg * std::exp(log_neg_z));
            } else {
              out.push_back(-rg * lambert_w(LambertBranch::Principal, -std::exp(log_neg_z)));
            }
            out.push_back(-rg * lambert_wm1_from_log(log_neg_z));
            return true;
          },
          [&](const KLFamily& f) {
            // u^2 + (b - rg - c) u + rg y - b (rg + c) = 0
            const double B = f.b - rg - c;
            const double C = rg * f.y - f.b * (rg + c);
            const double disc = B * B - 4.0 * C;
            if (disc < 0.0) return true;
            const double q = -0.5 * (B + (B >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc));
            if (q != 0.0) {
              out.push_back(q);
              out.push_back(C / q);
            } else {
              out.push_back(0.0);
            }
            return true;
          },
          [&](const MatchedFamily&) { return false; },
      },
      g.family());
}

bool symmetric(const Generator& g) {
  return std::holds_alternative<PowerFamily>(g.family()) && g.constraint() == Constraint::Reals;
}

}  // namespace

double candidate_residual(const Generator& g, double rho, double x, double u) {
  const double slope = x > 0.0 ? g.slope_plus() : g.slope_minus();
  return u - rho * g.d1(u) - (x - rho * slope);
}

std::vector<double> candidate_set(const Generator& g, double rho, double x) {
  if (!(rho > 0.0)) throw std::invalid_argument("prox step must be positive");
  std::vector<double> out{0.0};
  if (x == 0.0 || !feasible(g.constraint(), x)) return out;
  out.push_back(x);

  const bool flip = x < 0.0 && symmetric(g);
  const double xs = flip ? -x : x;
  const bool pos = xs > 0.0;
  const double alpha = pos ? g.alpha_plus() : g.alpha_minus();
  const double c = xs - rho * (pos ? g.slope_plus() : g.slope_minus());

  std::vector<double> roots;
  const bool closed = pos && closed_form_positive(g, rho, c, roots);
  if (!closed) {
    roots = bracket_roots([&](double u) { return u - rho * g.d1(u) - c; }, pos ? 0.0 : alpha, pos ? alpha : 0.0);
  }
  const double scale = std::max({1.0, std::abs(xs), std::abs(c)});
  for (double u : roots) {
    if (!std::isfinite(u) || u == 0.0) continue;
    if ((u > 0.0) != pos || std::abs(u) > std::abs(alpha)) continue;
    const double su = flip ? -u : u;
    if (!feasible(g.constraint(), su)) continue;
    if (std::abs(candidate_residual(g, rho, x, su)) > 1e-8 * scale) continue;
    out.push_back(su);
  }
  return out;
}

ProxResult prox_beta_detail(const Generator& g, double rho, double x) {
  const std::vector<double> cand = candidate_set(g, rho, x);
  std::vector<double> obj(cand.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const double d = cand[i] - x;
    obj[i] = g.beta(cand[i]) + d * d / (2.0 * rho);
    best = std::min(best, obj[i]);
  }
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(best));
  ProxResult res;
  res.value = std::numeric_limits<double>::infinity();
  int hits = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (obj[i] > best + tol) continue;
    if (hits > 0 && cand[i] == res.value) continue;
    ++hits;
    if (std::abs(cand[i]) < std::abs(res.value)) res.value = cand[i];
  }
  res.tie = hits > 1;
  res.value = project(g.constraint(), res.value);
  return res;
}

double prox_beta(const Generator& g, double rho, double x) {
  return prox_beta_detail(g, rho, x).value;
}

double prox_l0(double lambda0, Constraint c, double rho, double x) {
  const double u = x * x > 2.0 * rho * lambda0 ? x : 0.0;
  return project(c, u);
}

Vector prox_vector(const Relaxation& r, double rho, const Vector& x) {
  if (x.size() != r.size()) throw std::invalid_argument("prox_vector size mismatch");
  Vector out(x.size());
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    const auto& g = r.generators[static_cast<std::size_t>(n)];
    out[n] = g ? prox_beta(*g, rho, x[n]) : prox_l0(r.lambda0, r.constraint, rho, x[n]);
  }
  return out;
}

}  // namespace brex
