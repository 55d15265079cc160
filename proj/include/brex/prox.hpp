#pragma once

#include <vector>

#include "brex/generating.hpp"
#include "brex/problem.hpp"

namespace brex {

/// {0, x} together with S_x, the real solutions of
///   u - rho psi'(u) = x - rho psi'(alpha)
/// on the concave piece holding x (alpha = alpha+ for x > 0, alpha- for
/// x < 0), restricted to C. Closed forms for p in {2, 3/2, 4/3}, Shannon
/// (both Lambert branches) and KL; other generators use a bracketing search.
std::vector<double> candidate_set(const Generator& g, double rho, double x);

/// Residual u - rho psi'(u) - (x - rho psi'(alpha)) of a candidate.
double candidate_residual(const Generator& g, double rho, double x, double u);

struct ProxResult {
  double value = 0.0;
  bool tie = false;  // several candidates attain the minimum
};

/// argmin_u beta(u) + (u - x)^2 / (2 rho) over C. Ties resolve to 0 when 0
/// is among the minimizers, otherwise to the smallest magnitude.
ProxResult prox_beta_detail(const Generator& g, double rho, double x);
double prox_beta(const Generator& g, double rho, double x);

/// Hard threshold at sqrt(2 rho lambda0) followed by projection onto C;
/// the threshold point itself maps to 0.
double prox_l0(double lambda0, Constraint c, double rho, double x);

/// Coordinate-wise prox of the relaxation followed by projection.
Vector prox_vector(const Relaxation& r, double rho, const Vector& x);

}  // namespace brex
