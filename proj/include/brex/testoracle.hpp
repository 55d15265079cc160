#pragma once

#include <functional>
#include <vector>

#include "brex/generating.hpp"

namespace brex {

struct GridSpec {
  double lo = -1.0;
  double hi = 1.0;
  int points = 1001;

  void validate() const;
  double at(int i) const { return lo + (hi - lo) * i / (points - 1); }
};

/// Minimizes a 1D function on a grid, then refines by golden section on the
/// cells around the best grid point. Returns the minimizer.
double grid_golden_min(const std::function<double(double)>& f, const GridSpec& grid);

/// Brute-force argmin_u beta(u) + (u - x)^2 / (2 rho) over C.
double oracle_prox(const Generator& g, double rho, double x, int points = 20000);
double prox_objective(const Generator& g, double rho, double x, double u);

/// sup_z min(lambda0, d(0, z)) - d(x, z), evaluated from psi alone.
double oracle_beta(const Generator& g, double x, int points = 4000);

/// S(z) = sup_x -lambda0 |x|_0 - d(x, z) by numeric search over x.
double oracle_s_transform(const Generator& g, double z);

/// sup_u -S(u) - d(x, u) with S from oracle_s_transform.
double oracle_s_composition(const Generator& g, double x, int points = 800);

/// True when every second difference is >= -tol.
bool oracle_convexity(const std::vector<double>& values, double tol = 1e-9);

}  // namespace brex
