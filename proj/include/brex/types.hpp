#pragma once

#include <Eigen/Dense>

namespace brex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Per-coordinate constraint set C.
enum class Constraint { Reals, NonnegReals };

inline bool feasible(Constraint c, double x) {
  return c == Constraint::Reals || x >= 0.0;
}

inline double project(Constraint c, double x) {
  return (c == Constraint::NonnegReals && x < 0.0) ? 0.0 : x;
}

const char* to_string(Constraint c);

}  // namespace brex
