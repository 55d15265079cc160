#pragma once

#include <cstdint>
#include <random>

#include "brex/problem.hpp"

namespace brex {

struct DataGenConfig {
  FidelityKind kind = FidelityKind::LS;
  int M = 100;
  int N = 300;
  int k = 10;
  double eta = 0.9;     // column correlation (LS, LR)
  double tau = 8.0;     // LS SNR in dB
  double s = 0.5;       // LR signal scale
  double alpha = 50.0;  // KL gain
  double b = 0.1;       // KL background
  std::uint64_t seed = 0;
  double lambda0 = 0.0;        // used when lambda0_scale == 0
  double lambda0_scale = 0.0;  // lambda0 = scale * F_y(0)
  double lambda2 = 0.0;

  void validate() const;
};

struct Instance {
  Problem problem;
  Vector x_true;
};

/// Rows drawn from N(0, Sigma_eta) with [Sigma_eta]_ij = eta^|i-j|.
Matrix correlated_gaussian(int M, int N, double eta, std::mt19937_64& rng);

/// Inversion below mean 30, transformed rejection (PTRS) above.
std::int64_t poisson_sample(double mean, std::mt19937_64& rng);

Instance gen_ls(const DataGenConfig& c);
Instance gen_lr(const DataGenConfig& c);
Instance gen_kl(const DataGenConfig& c);
Instance generate(const DataGenConfig& c);

}  // namespace brex
