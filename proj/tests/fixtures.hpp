#pragma once

#include <cmath>
#include <random>

#include "brex/problem.hpp"

namespace fixtures {

using brex::Constraint;
using brex::FidelityKind;
using brex::Matrix;
using brex::Problem;
using brex::Vector;

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix A(2, 2);
  A << a, b, c, d;
  return A;
}

// A = [3,1;1,3], y = (1,2), lambda0 = 0.5
inline Problem ls2d() {
  Problem p;
  p.A = mat2(3, 1, 1, 3);
  p.fidelity = {FidelityKind::LS, vec({1, 2}), 0.0};
  p.lambda0 = 0.5;
  return p;
}

// A = [-1,2;2,0.2], y = (1,0), lambda0 = 1, lambda2 = 0.1
inline Problem lr2d() {
  Problem p;
  p.A = mat2(-1, 2, 2, 0.2);
  p.fidelity = {FidelityKind::LR, vec({1, 0}), 0.0};
  p.lambda0 = 1.0;
  p.lambda2 = 0.1;
  return p;
}

// A = [0.45,0.8;0.85,0.25], y = (0.2,0.2), b = 0.1, lambda0 = 0.06 F_y(0)
inline Problem kl2d() {
  Problem p;
  p.A = mat2(0.45, 0.8, 0.85, 0.25);
  p.fidelity = {FidelityKind::KL, vec({0.2, 0.2}), 0.1};
  p.constraint = Constraint::NonnegReals;
  p.lambda0 = 0.06 * 2.0 * (0.1 - 0.2 * std::log(0.1));
  return p;
}

// Small random instance of the given kind; KL uses a nonnegative A.
inline Problem random_problem(FidelityKind kind, int M, int N, std::mt19937_64& rng, double lambda2 = 0.0) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Problem p;
  p.A.resize(M, N);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N; ++j) p.A(i, j) = kind == FidelityKind::KL ? std::abs(normal(rng)) : normal(rng);
  }
  Vector y(M);
  for (int i = 0; i < M; ++i) {
    if (kind == FidelityKind::LS) y[i] = normal(rng);
    if (kind == FidelityKind::LR) y[i] = unif(rng) < 0.5 ? 0.0 : 1.0;
    if (kind == FidelityKind::KL) y[i] = 2.0 * unif(rng);
  }
  p.fidelity = {kind, y, kind == FidelityKind::KL ? 0.1 : 0.0};
  p.constraint = kind == FidelityKind::KL ? Constraint::NonnegReals : Constraint::Reals;
  p.lambda2 = lambda2;
  p.lambda0 = (0.05 + 0.2 * unif(rng)) * p.fidelity.value(Vector::Zero(M));
  return p;
}

}  // namespace fixtures
