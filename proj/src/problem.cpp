#include "brex/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "brex/errors.hpp"

namespace brex {

void Problem::validate() const {
  fidelity.validate();
  if (A.rows() != fidelity.size()) {
    throw std::invalid_argument("A has " + std::to_string(A.rows()) + " rows but y has " +
                                std::to_string(fidelity.size()) + " entries");
  }
  if (A.cols() < 1) throw std::invalid_argument("A needs at least one column");
  if (!A.allFinite()) throw std::invalid_argument("A has non-finite entries");
  if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) throw std::invalid_argument("lambda0 must be >= 0");
  if (!(lambda2 >= 0.0) || !std::isfinite(lambda2)) throw std::invalid_argument("lambda2 must be >= 0");
  if (fidelity.kind == FidelityKind::KL) {
    if ((A.array() < 0.0).any()) throw std::invalid_argument("KL requires a nonnegative matrix A");
    if (constraint != Constraint::NonnegReals) throw std::invalid_argument("KL requires the nonneg constraint");
  }
}

double Problem::smooth_value(const Vector& x) const {
  return fidelity.value(A * x) + 0.5 * lambda2 * x.squaredNorm();
}

Vector Problem::smooth_gradient(const Vector& x) const {
  return grad_F(fidelity, A, x).grad + lambda2 * x;
}

Relaxation Relaxation::l0(double lambda0, Constraint constraint, Eigen::Index n) {
  Relaxation r;
  r.lambda0 = lambda0;
  r.constraint = constraint;
  r.generators.assign(static_cast<std::size_t>(n), std::nullopt);
  return r;
}

bool Relaxation::is_l0() const {
  for (const auto& g : generators) {
    if (g) return false;
  }
  return true;
}

double Relaxation::beta(Eigen::Index n, double x) const {
  const auto& g = generators[static_cast<std::size_t>(n)];
  if (g) return g->beta(x);
  if (!feasible(constraint, x)) throw DomainError("penalty evaluated outside the constraint set");
  return x == 0.0 ? 0.0 : lambda0;
}

double Relaxation::value(const Vector& x) const {
  if (x.size() != size()) throw std::invalid_argument("relaxation size mismatch");
  double acc = 0.0;
  for (Eigen::Index n = 0; n < x.size(); ++n) acc += beta(n, x[n]);
  return acc;
}

double Relaxation::alpha_minus(Eigen::Index n) const {
  const auto& g = generators[static_cast<std::size_t>(n)];
  return g ? g->alpha_minus() : 0.0;
}

double Relaxation::alpha_plus(Eigen::Index n) const {
  const auto& g = generators[static_cast<std::size_t>(n)];
  return g ? g->alpha_plus() : 0.0;
}

Eigen::Index count_nonzero(const Vector& x) {
  return (x.array() != 0.0).count();
}

double objective_J0(const Problem& p, const Vector& x) {
  return p.smooth_value(x) + p.lambda0 * static_cast<double>(count_nonzero(x));
}

double objective_JPsi(const Problem& p, const Relaxation& r, const Vector& x) {
  return p.smooth_value(x) + r.value(x);
}

}  // namespace brex
