#pragma once

#include <string>
#include <vector>

#include "brex/generating.hpp"
#include "brex/problem.hpp"

namespace brex {

enum class CalibrationMode { AtThreshold, Strict };

struct CalibrationOptions {
  CalibrationMode mode = CalibrationMode::AtThreshold;
  double margin = 0.0;  // Strict: gamma = (1 + margin) gamma_thr
};

struct CalibrationReport {
  std::string generator;
  CalibrationMode mode = CalibrationMode::AtThreshold;
  double margin = 0.0;
  Vector gamma_thr;
  Vector gamma;
  std::vector<bool> exact;  // gamma_n >= gamma_thr_n
  Vector column_norms;      // |a_n|^2
};

struct Calibrated {
  Relaxation relaxation;
  CalibrationReport report;
};

/// lambda2 + sum_m a_mn^2 sup f''_m: the curvature the generator must dominate.
double curvature_demand(const Problem& p, Eigen::Index n);

/// Closed-form exactness threshold for coordinate n. Power rows for every
/// fidelity, Shannon and KL generators on nonnegative problems; the matched
/// family falls back to generic_threshold. Returns 0 for a coordinate with no
/// curvature demand (zero column and lambda2 = 0).
double gamma_threshold(const Problem& p, const GeneratorFamily& family, Eigen::Index n);

/// Smallest gamma with numeric_inf_curvature(gamma psi) >= curvature_demand,
/// by bisection on gamma.
double generic_threshold(const Problem& p, const GeneratorFamily& family, Eigen::Index n);

/// The generator family used on coordinate n: the matched family takes its
/// scale and observation from the diagonal of A.
GeneratorFamily family_for_coordinate(const Problem& p, const GeneratorFamily& family, Eigen::Index n);

/// Relaxation with the given gammas; a zero gamma excludes the coordinate
/// (plain l0 term).
Relaxation build_relaxation(const Problem& p, const GeneratorFamily& family, const Vector& gamma);

Calibrated calibrate(const Problem& p, const GeneratorFamily& family, CalibrationOptions options = {});

/// Report for user-chosen gammas against the thresholds.
CalibrationReport report_for(const Problem& p, const GeneratorFamily& family, const Vector& gamma);

}  // namespace brex
