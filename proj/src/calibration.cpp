#include "brex/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "brex/errors.hpp"
#include "brex/lambert.hpp"

namespace brex {

namespace {

void check_pairing(const Problem& p, const GeneratorFamily& family) {
  if (!(p.lambda0 > 0.0)) throw std::invalid_argument("calibration needs lambda0 > 0");
  const bool nonneg_only = std::holds_alternative<ShannonFamily>(family) || std::holds_alternative<KLFamily>(family);
  if (nonneg_only && p.constraint != Constraint::NonnegReals) {
    throw UnsupportedPairing(describe(family) + " generator requires a nonnegative problem");
  }
  if (const auto* m = std::get_if<MatchedFamily>(&family)) {
    if (m->fidelity != p.fidelity.kind) throw UnsupportedPairing("matched generator must use the problem's fidelity");
    if (p.A.rows() != p.A.cols()) throw UnsupportedPairing("matched generator needs a square diagonal A");
    for (Eigen::Index i = 0; i < p.A.rows(); ++i) {
      for (Eigen::Index j = 0; j < p.A.cols(); ++j) {
        if (i != j && p.A(i, j) != 0.0) throw UnsupportedPairing("matched generator needs a diagonal A");
      }
    }
  }
}

// gamma W(-exp(-1 - lambda0/(y gamma)))^2 y / b^2: inf psi'' of the KL generator.
double kl_inf_curvature(double gamma, double lambda0, double y, double b) {
  const double t = lambda0 / (y * gamma) + 1.0;
  const double w = t > 700.0 ? -std::exp(-t) : lambert_w(LambertBranch::Principal, -std::exp(-t));
  return gamma * y * w * w / (b * b);
}

// Smallest gamma with curvature(gamma) >= demand, for curvature increasing in gamma.
template <class Fn>
double bisect_gamma(Fn curvature, double demand, double guess) {
  double lo = guess, hi = guess;
  int steps = 0;
  while (curvature(hi) < demand) {
    lo = hi;
    hi *= 2.0;
    if (++steps > 200) throw ConvergenceError("threshold bisection found no upper bracket");
  }
  if (lo == hi) {
    while (curvature(lo) >= demand) {
      hi = lo;
      lo *= 0.5;
      if (++steps > 200 || lo == 0.0) throw ConvergenceError("threshold bisection found no lower bracket");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (curvature(mid) >= demand ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double curvature_demand(const Problem& p, Eigen::Index n) {
  const Vector sup = p.fidelity.curvature_sup();
  return p.lambda2 + p.A.col(n).array().square().matrix().dot(sup);
}

GeneratorFamily family_for_coordinate(const Problem& p, const GeneratorFamily& family, Eigen::Index n) {
  if (const auto* m = std::get_if<MatchedFamily>(&family)) {
    MatchedFamily out = *m;
    out.fidelity = p.fidelity.kind;
    out.a = p.A(n, n);
    out.y = p.fidelity.y[n];
    out.b = p.fidelity.b;
    out.lambda2 = p.lambda2;
    return out;
  }
  return family;
}

double gamma_threshold(const Problem& p, const GeneratorFamily& family, Eigen::Index n) {
  check_pairing(p, family);
  const double demand = curvature_demand(p, n);
  if (demand == 0.0) return 0.0;
  const double lambda0 = p.lambda0;
  if (const auto* f = std::get_if<PowerFamily>(&family)) {
    return std::pow(f->p * lambda0, (2.0 - f->p) / 2.0) * std::pow(demand, f->p / 2.0);
  }
  if (std::holds_alternative<ShannonFamily>(family)) return std::sqrt(lambda0 * demand);
  if (const auto* f = std::get_if<KLFamily>(&family)) {
    const double y = f->y, b = f->b;
    return bisect_gamma([&](double g) { return kl_inf_curvature(g, lambda0, y, b); }, demand, demand * b * b / y);
  }
  return generic_threshold(p, family, n);
}

double generic_threshold(const Problem& p, const GeneratorFamily& family, Eigen::Index n) {
  check_pairing(p, family);
  const double demand = curvature_demand(p, n);
  if (demand == 0.0) return 0.0;
  const GeneratorFamily fam = family_for_coordinate(p, family, n);
  auto curvature = [&](double g) {
    return numeric_inf_curvature(Generator(fam, g, p.lambda0, p.constraint));
  };
  return bisect_gamma(curvature, demand, 1.0);
}

Relaxation build_relaxation(const Problem& p, const GeneratorFamily& family, const Vector& gamma) {
  if (gamma.size() != p.cols()) throw std::invalid_argument("gamma has the wrong length");
  Relaxation r = Relaxation::l0(p.lambda0, p.constraint, p.cols());
  for (Eigen::Index n = 0; n < p.cols(); ++n) {
    if (gamma[n] < 0.0 || !std::isfinite(gamma[n])) throw std::invalid_argument("gamma must be finite and >= 0");
    if (gamma[n] == 0.0) continue;
    r.generators[static_cast<std::size_t>(n)].emplace(family_for_coordinate(p, family, n), gamma[n], p.lambda0,
                                                      p.constraint);
  }
  return r;
}

CalibrationReport report_for(const Problem& p, const GeneratorFamily& family, const Vector& gamma) {
  CalibrationReport rep;
  rep.generator = describe(family);
  rep.gamma = gamma;
  rep.gamma_thr.resize(p.cols());
  rep.column_norms = p.A.colwise().squaredNorm().transpose();
  rep.exact.resize(static_cast<std::size_t>(p.cols()));
  for (Eigen::Index n = 0; n < p.cols(); ++n) {
    rep.gamma_thr[n] = gamma_threshold(p, family, n);
    rep.exact[static_cast<std::size_t>(n)] = gamma[n] >= rep.gamma_thr[n];
  }
  return rep;
}

Calibrated calibrate(const Problem& p, const GeneratorFamily& family, CalibrationOptions options) {
  if (options.margin < 0.0) throw std::invalid_argument("calibration margin must be >= 0");
  const double factor = options.mode == CalibrationMode::Strict ? 1.0 + options.margin : 1.0;
  Vector thr(p.cols());
  for (Eigen::Index n = 0; n < p.cols(); ++n) thr[n] = gamma_threshold(p, family, n);
  Calibrated out{build_relaxation(p, family, factor * thr), {}};
  out.report.generator = describe(family);
  out.report.mode = options.mode;
  out.report.margin = options.mode == CalibrationMode::Strict ? options.margin : 0.0;
  out.report.gamma_thr = thr;
  out.report.gamma = factor * thr;
  out.report.column_norms = p.A.colwise().squaredNorm().transpose();
  out.report.exact.assign(static_cast<std::size_t>(p.cols()), true);
  return out;
}

}  // namespace brex
