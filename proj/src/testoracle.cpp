#include "brex/testoracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace brex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double golden(const std::function<double(double)>& f, double a, double b, int iters = 100) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

// Smallest positive z on the given side of 0 usable as an interior point.
double interior_floor(const Generator& g) {
  return g.constraint() == Constraint::NonnegReals ? 1e-300 : -kInf;
}

}  // namespace

void GridSpec::validate() const {
  if (!(lo < hi) || points < 3) throw std::invalid_argument("grid needs lo < hi and at least 3 points");
}

double grid_golden_min(const std::function<double(double)>& f, const GridSpec& grid) {
  grid.validate();
  int best = 0;
  double fbest = kInf;
  for (int i = 0; i < grid.points; ++i) {
    const double v = f(grid.at(i));
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  const double a = grid.at(std::max(0, best - 1));
  const double b = grid.at(std::min(grid.points - 1, best + 1));
  const double u = golden(f, a, b);
  return f(u) < fbest ? u : grid.at(best);
}

double prox_objective(const Generator& g, double rho, double x, double u) {
  return g.beta(u) + (u - x) * (u - x) / (2.0 * rho);
}

double oracle_prox(const Generator& g, double rho, double x, int points) {
  double lo = std::min(g.alpha_minus(), x) - 1.0;
  const double hi = std::max(g.alpha_plus(), x) + 1.0;
  if (g.constraint() == Constraint::NonnegReals) lo = 0.0;
  auto f = [&](double u) { return prox_objective(g, rho, x, u); };
  double u = grid_golden_min(f, {lo, hi, points});
  for (double c : {0.0, x}) {
    if (feasible(g.constraint(), c) && f(c) < f(u)) u = c;
  }
  return u;
}

double oracle_beta(const Generator& g, double x, int points) {
  const double lambda0 = g.lambda0();
  // d(x, z) needs psi'(z) finite, so z stays off the Shannon boundary
  auto h = [&](double z) {
    if (z < interior_floor(g) || (g.constraint() == Constraint::NonnegReals && z <= 0.0)) return -kInf;
    if (!std::isfinite(g.d1(z))) return -kInf;
    return std::min(lambda0, g.bregman(0.0, z)) - g.bregman(x, z);
  };
  const double span = std::max({std::abs(x), std::abs(g.alpha_minus()), g.alpha_plus()}) + 1.0;
  const double lo = g.constraint() == Constraint::NonnegReals ? 0.0 : -span;
  GridSpec grid{lo, span, points};
  double best = h(x == 0.0 && g.constraint() == Constraint::Reals ? 0.0 : x);
  const double z = grid_golden_min([&](double t) { return -h(t); }, grid);
  best = std::max(best, h(z));
  // tail: far points on a geometric scale
  for (int i = 1; i <= 60; ++i) {
    const double t = span * std::pow(1.5, i);
    best = std::max(best, h(t));
    if (g.constraint() == Constraint::Reals) best = std::max(best, h(-t));
  }
  return best;
}

double oracle_s_transform(const Generator& g, double z) {
  // x = 0 branch and the best nonzero x; d(., z) is convex so golden search suffices
  const double at_zero = -g.bregman(0.0, z);
  const double w = std::abs(z) + 1.0;
  const double lo = g.constraint() == Constraint::NonnegReals ? 0.0 : z - w;
  auto dist = [&](double x) { return x == 0.0 ? kInf : g.bregman(x, z); };
  const double x = grid_golden_min(dist, {lo, z + w, 201});
  return std::max(at_zero, -g.lambda0() - dist(x));
}

double oracle_s_composition(const Generator& g, double x, int points) {
  auto h = [&](double u) {
    if (g.constraint() == Constraint::NonnegReals && u <= 0.0) return -kInf;
    if (!std::isfinite(g.d1(u))) return -kInf;
    return -oracle_s_transform(g, u) - g.bregman(x, u);
  };
  const double span = std::max({std::abs(x), std::abs(g.alpha_minus()), g.alpha_plus()}) + 1.0;
  const double lo = g.constraint() == Constraint::NonnegReals ? 0.0 : -span;
  const double u = grid_golden_min([&](double t) { return -h(t); }, {lo, span, points});
  double best = std::max(h(u), g.constraint() == Constraint::Reals || x > 0.0 ? h(x) : -kInf);
  return best;
}

bool oracle_convexity(const std::vector<double>& values, double tol) {
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i - 1] - 2.0 * values[i] + values[i + 1] < -tol) return false;
  }
  return true;
}

}  // namespace brex
