#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "brex/calibration.hpp"
#include "brex/generating.hpp"
#include "brex/problem.hpp"

namespace brex::cli {

enum ExitCode { kOk = 0, kFailure = 1, kParseError = 2, kDomainError = 3, kCalibrationError = 4 };

/// power:<p> (p may be a fraction such as 4/3), shannon, kl[:y], matched.
/// KL generators take b from the problem when it has one.
GeneratorFamily parse_psi(const std::string& spec, const Problem& p);

/// thr | thrx<factor> | list:<v1,...,vN>
struct GammaSpec {
  enum class Kind { Threshold, Scaled, List } kind = Kind::Threshold;
  double factor = 1.0;
  std::vector<double> values;
};
GammaSpec parse_gamma(const std::string& spec);

/// Relaxation and report for a gamma specification.
Calibrated relaxation_for(const Problem& p, const GeneratorFamily& family, const GammaSpec& gamma);

/// Methods for the benchmark: "l0" or a psi spec at the threshold.
std::vector<std::string> split(const std::string& s, char sep);

/// Runs the command line; output goes to out/err rather than the process
/// streams so the commands can be driven in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace brex::cli

#include "brex/datagen.hpp"
#include "brex/solver.hpp"

namespace brex::cli {

struct MethodRun {
  double J0 = 0.0;
  double seconds = 0.0;
  int iterations = 0;
  std::string stop_reason;
  bool failed = false;
  std::string error;
};

struct BenchmarkReport {
  std::vector<std::string> methods;
  std::vector<std::vector<MethodRun>> runs;   // [instance][method]
  std::vector<std::vector<int>> ranks;        // [instance][method], 1-based
  std::vector<std::vector<int>> rank_counts;  // [method][rank - 1]
};

/// Ranks ascending values; values within rel_tol share the best rank of their block.
std::vector<int> rank_with_ties(const std::vector<double>& values, double rel_tol = 1e-9);

/// Solves with "l0" or a relaxation at its threshold (then thresholded back
/// to J_0), returning the final J_0.
MethodRun run_method(const Problem& p, const std::string& method, const SolverConfig& config);

/// Instances use seeds config.seed + i; `threads` <= 0 reads BREX_THREADS.
BenchmarkReport run_benchmark(const DataGenConfig& config, const std::vector<std::string>& methods, int instances,
                              int threads = 0);

}  // namespace brex::cli
