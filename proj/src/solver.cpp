#include "brex/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "brex/errors.hpp"
#include "brex/prox.hpp"

namespace brex {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Tolerance: return "tolerance";
    case StopReason::MaxIter: return "max_iter";
    case StopReason::DomainError: return "domain_error";
  }
  return "?";
}

void validate_config(const Problem& p, const SolverConfig& config) {
  if (config.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(config.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (config.x0 && config.x0->size() != p.cols()) throw std::invalid_argument("x0 has the wrong length");
  if (const auto* f = std::get_if<FixedStep>(&config.step)) {
    const double L = lipschitz_L(p.fidelity, p.A, p.lambda2);
    if (!(f->rho > 0.0) || !(f->rho * L < 1.0)) {
      throw std::invalid_argument("fixed step must satisfy 0 < rho < 1/L (L = " + std::to_string(L) + ")");
    }
  } else {
    const auto& b = std::get<Backtracking>(config.step);
    if (!(b.shrink > 0.0 && b.shrink < 1.0)) throw std::invalid_argument("shrink must lie in (0, 1)");
    if (!(b.growth >= 1.0)) throw std::invalid_argument("growth must be >= 1");
    if (b.rho0 < 0.0) throw std::invalid_argument("rho0 must be >= 0");
    if (b.max_shrinks < 1) throw std::invalid_argument("max_shrinks must be >= 1");
  }
}

Vector pga_step(const Problem& p, const Relaxation& r, double rho, const Vector& x) {
  return prox_vector(r, rho, x - rho * p.smooth_gradient(x));
}

namespace {

double smooth_or_inf(const Problem& p, const Vector& x) {
  if (!p.fidelity.in_domain(p.A * x)) return std::numeric_limits<double>::infinity();
  return p.smooth_value(x);
}

}  // namespace

SolveResult solve(const Problem& p, const Relaxation& r, const SolverConfig& config) {
  validate_config(p, config);
  if (r.size() != p.cols()) throw std::invalid_argument("relaxation size does not match the problem");
  SolveResult res;
  Vector x = config.x0 ? Vector(config.x0->unaryExpr([&](double v) { return project(p.constraint, v); }))
                       : Vector(Vector::Zero(p.cols()));
  if (!p.fidelity.in_domain(p.A * x)) throw DomainError("initial point outside the fidelity domain");

  const bool fixed = std::holds_alternative<FixedStep>(config.step);
  Backtracking bt = fixed ? Backtracking{} : std::get<Backtracking>(config.step);
  double rho;
  if (fixed) {
    rho = std::get<FixedStep>(config.step).rho;
  } else {
    if (bt.rho0 == 0.0) {
      const double L = lipschitz_L(p.fidelity, p.A, p.lambda2);
      bt.rho0 = L > 0.0 ? 4.0 / L : 1.0;
    }
    rho = bt.rho0;
  }

  double h = p.smooth_value(x);
  auto record = [&](int iter, double step, double delta) {
    if (!config.record_trace) return;
    res.trace.push_back({iter, h + r.value(x), objective_J0(p, x), step, delta});
  };
  record(0, 0.0, 0.0);

  for (int k = 1; k <= config.max_iter; ++k) {
    const Vector g = p.smooth_gradient(x);
    Vector next;
    double h_next;
    if (fixed) {
      next = prox_vector(r, rho, x - rho * g);
      h_next = smooth_or_inf(p, next);
      if (!std::isfinite(h_next)) {
        res.stop_reason = StopReason::DomainError;
        break;
      }
    } else {
      int shrinks = 0;
      for (;;) {
        next = prox_vector(r, rho, x - rho * g);
        h_next = smooth_or_inf(p, next);
        const Vector d = next - x;
        if (h_next <= h + g.dot(d) + d.squaredNorm() / (2.0 * rho)) break;
        if (++shrinks > bt.max_shrinks) break;
        rho *= bt.shrink;
      }
      if (shrinks > bt.max_shrinks) {
        res.stop_reason = StopReason::DomainError;
        break;
      }
    }
    const double delta = (next - x).norm();
    const double scale = std::max(1.0, x.norm());
    const double used = rho;
    x = std::move(next);
    h = h_next;
    res.iterations = k;
    res.last_step = used;
    record(k, used, delta);
    if (!fixed) rho = std::min(bt.rho0, rho * bt.growth);
    if (delta < config.rel_tol * scale) {
      res.stop_reason = StopReason::Tolerance;
      break;
    }
    if (k == config.max_iter) res.stop_reason = StopReason::MaxIter;
  }
  res.x = x;
  return res;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  const auto old = os.precision(17);
  os << "iter,J_Psi,J_0,step,delta\n";
  for (const auto& t : trace) {
    os << t.iter << ',' << t.J_Psi << ',' << t.J_0 << ',' << t.step << ',' << t.delta << '\n';
  }
  os.precision(old);
}

}  // namespace brex
