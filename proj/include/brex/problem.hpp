#pragma once

#include <optional>
#include <vector>

#include "brex/fidelity.hpp"
#include "brex/generating.hpp"
#include "brex/types.hpp"

namespace brex {

/// min_x F_y(Ax) + lambda0 |x|_0 + lambda2/2 |x|^2  subject to x in C^N.
struct Problem {
  Matrix A;
  Fidelity fidelity;
  double lambda0 = 0.0;
  double lambda2 = 0.0;
  Constraint constraint = Constraint::Reals;

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }

  /// Throws std::invalid_argument on inconsistent dimensions or parameters.
  /// KL requires A >= 0 entrywise and the nonnegative constraint.
  void validate() const;

  /// F_y(Ax) + lambda2/2 |x|^2.
  double smooth_value(const Vector& x) const;
  /// A^T grad F_y(Ax) + lambda2 x.
  Vector smooth_gradient(const Vector& x) const;
};

/// Separable penalty sum_n beta_n(x_n). A coordinate without a generator
/// carries the plain l0 term lambda0 |x_n|_0; with no generators at all this
/// is the l0 penalty itself.
struct Relaxation {
  double lambda0 = 0.0;
  Constraint constraint = Constraint::Reals;
  std::vector<std::optional<Generator>> generators;

  static Relaxation l0(double lambda0, Constraint constraint, Eigen::Index n);

  Eigen::Index size() const { return static_cast<Eigen::Index>(generators.size()); }
  bool is_l0() const;

  /// beta_n(x), or lambda0 |x|_0 for an excluded coordinate.
  double beta(Eigen::Index n, double x) const;
  /// B(x) = sum_n beta_n(x_n).
  double value(const Vector& x) const;
  double alpha_minus(Eigen::Index n) const;
  double alpha_plus(Eigen::Index n) const;
};

double objective_J0(const Problem& p, const Vector& x);
double objective_JPsi(const Problem& p, const Relaxation& r, const Vector& x);

/// |x|_0 counting exact zeros.
Eigen::Index count_nonzero(const Vector& x);

}  // namespace brex
