#include "brex/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace brex {

void DataGenConfig::validate() const {
  if (M < 1 || N < 1) throw std::invalid_argument("M and N must be positive");
  if (k < 0 || k > N) throw std::invalid_argument("sparsity k must lie in [0, N]");
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in [0, 1)");
  if (!(alpha > 0.0)) throw std::invalid_argument("gain alpha must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("background b must be > 0");
  if (lambda0 < 0.0 || lambda0_scale < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("lambda parameters must be >= 0");
  }
}

Matrix correlated_gaussian(int M, int N, double eta, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix G(M, N);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N; ++j) G(i, j) = normal(rng);
  }
  if (eta == 0.0) return G;
  Matrix sigma(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) sigma(i, j) = std::pow(eta, std::abs(i - j));
  }
  Eigen::LLT<Matrix> llt(sigma);
  return G * llt.matrixL().transpose();
}

std::int64_t poisson_sample(double mean, std::mt19937_64& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("Poisson mean must be finite and >= 0");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    double p = std::exp(-mean);
    double cdf = p;
    const double u = unif(rng);
    std::int64_t k = 0;
    while (u > cdf && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double U = unif(rng) - 0.5;
    const double V = unif(rng);
    const double us = 0.5 - std::abs(U);
    const double kf = std::floor((2.0 * a / us + b) * U + mean + 0.43);
    if (us >= 0.07 && V <= vr) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && V > us)) continue;
    if (std::log(V) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + kf * loglam - std::lgamma(kf + 1.0)) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

namespace {

void set_lambda(const DataGenConfig& c, Problem& p) {
  p.lambda2 = c.lambda2;
  p.lambda0 = c.lambda0_scale > 0.0 ? c.lambda0_scale * p.fidelity.value(Vector::Zero(p.rows())) : c.lambda0;
}

Matrix normalized_columns(Matrix A) {
  for (Eigen::Index n = 0; n < A.cols(); ++n) {
    const double nrm = A.col(n).norm();
    if (nrm > 0.0) A.col(n) /= nrm;
  }
  return A;
}

}  // namespace

Instance gen_ls(const DataGenConfig& c) {
  c.validate();
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal;
  Instance inst;
  Problem& p = inst.problem;
  p.A = normalized_columns(correlated_gaussian(c.M, c.N, c.eta, rng));
  std::vector<int> idx(static_cast<std::size_t>(c.N));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  inst.x_true = Vector::Zero(c.N);
  for (int j = 0; j < c.k; ++j) inst.x_true[idx[static_cast<std::size_t>(j)]] = normal(rng) < 0.0 ? -1.0 : 1.0;
  const Vector clean = p.A * inst.x_true;
  const double varsigma = clean.squaredNorm() * std::pow(10.0, -c.tau / 10.0);
  const double sd = std::sqrt(varsigma / c.M);
  Vector y = clean;
  for (int m = 0; m < c.M; ++m) y[m] += sd * normal(rng);
  p.fidelity = {FidelityKind::LS, y, 0.0};
  p.constraint = Constraint::Reals;
  set_lambda(c, p);
  return inst;
}

Instance gen_lr(const DataGenConfig& c) {
  c.validate();
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Instance inst;
  Problem& p = inst.problem;
  p.A = normalized_columns(correlated_gaussian(c.M, c.N, c.eta, rng));
  inst.x_true = Vector::Zero(c.N);
  for (int j = 0; j < c.k; ++j) {
    const auto n = static_cast<Eigen::Index>(std::lround(static_cast<double>(j) * c.N / c.k));
    inst.x_true[std::min<Eigen::Index>(n, c.N - 1)] = 1.0;
  }
  const Vector margin = p.A * inst.x_true;
  Vector y(c.M);
  for (int m = 0; m < c.M; ++m) {
    const double prob = 1.0 / (1.0 + std::exp(-c.s * margin[m]));
    y[m] = unif(rng) < prob ? 1.0 : 0.0;
  }
  p.fidelity = {FidelityKind::LR, y, 0.0};
  p.constraint = Constraint::Reals;
  set_lambda(c, p);
  return inst;
}

Instance gen_kl(const DataGenConfig& c) {
  c.validate();
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Instance inst;
  Problem& p = inst.problem;
  p.A.resize(c.M, c.N);
  for (int i = 0; i < c.M; ++i) {
    for (int j = 0; j < c.N; ++j) p.A(i, j) = std::abs(normal(rng));
  }
  std::vector<int> idx(static_cast<std::size_t>(c.N));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  inst.x_true = Vector::Zero(c.N);
  for (int j = 0; j < c.k; ++j) inst.x_true[idx[static_cast<std::size_t>(j)]] = 1.0 - unif(rng);  // (0, 1]
  const Vector mean = p.A * inst.x_true;
  Vector y(c.M);
  for (int m = 0; m < c.M; ++m) {
    y[m] = static_cast<double>(poisson_sample(c.alpha * (mean[m] + c.b), rng)) / c.alpha;
  }
  p.fidelity = {FidelityKind::KL, y, c.b};
  p.constraint = Constraint::NonnegReals;
  set_lambda(c, p);
  return inst;
}

Instance generate(const DataGenConfig& c) {
  switch (c.kind) {
    case FidelityKind::LS: return gen_ls(c);
    case FidelityKind::LR: return gen_lr(c);
    case FidelityKind::KL: return gen_kl(c);
  }
  throw std::invalid_argument("unknown fidelity kind");
}

}  // namespace brex
