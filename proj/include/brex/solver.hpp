#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "brex/problem.hpp"

namespace brex {

struct FixedStep {
  double rho = 0.0;
};

struct Backtracking {
  double rho0 = 0.0;  // 0: use 4 / L
  double shrink = 0.5;
  double growth = 1.25;
  int max_shrinks = 60;
};

struct SolverConfig {
  std::variant<FixedStep, Backtracking> step = Backtracking{};
  int max_iter = 5000;
  double rel_tol = 1e-6;
  std::optional<Vector> x0;  // defaults to 0
  bool record_trace = true;
};

enum class StopReason { Tolerance, MaxIter, DomainError };

const char* to_string(StopReason r);

struct TraceRow {
  int iter = 0;
  double J_Psi = 0.0;
  double J_0 = 0.0;
  double step = 0.0;
  double delta = 0.0;
};

struct SolveResult {
  Vector x;
  std::vector<TraceRow> trace;
  StopReason stop_reason = StopReason::MaxIter;
  int iterations = 0;
  double last_step = 0.0;
};

/// Checks the step configuration against the problem; a fixed rho must satisfy
/// 0 < rho < 1/L.
void validate_config(const Problem& p, const SolverConfig& config);

/// One forward-backward step prox(x - rho grad h(x)) with h the smooth part.
Vector pga_step(const Problem& p, const Relaxation& r, double rho, const Vector& x);

/// Proximal gradient descent on F_y(Ax) + lambda2/2 |x|^2 + B(x). Passing
/// Relaxation::l0 runs the same iteration directly on J_0.
SolveResult solve(const Problem& p, const Relaxation& r, const SolverConfig& config = {});

/// CSV with header iter,J_Psi,J_0,step,delta.
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace brex
