#include <doctest.h>

#include <cmath>
#include <random>

#include "brex/calibration.hpp"
#include "brex/errors.hpp"
#include "fixtures.hpp"

using namespace brex;
using fixtures::vec;

namespace {

Problem single_column(FidelityKind kind, const Vector& col, const Vector& y, double lambda2, double lambda0 = 0.5) {
  Problem p;
  p.A = col;
  p.fidelity = {kind, y, kind == FidelityKind::KL ? 0.1 : 0.0};
  p.lambda0 = lambda0;
  p.lambda2 = lambda2;
  p.constraint = kind == FidelityKind::KL ? Constraint::NonnegReals : Constraint::Reals;
  return p;
}

// Second derivative of t -> J_Psi restricted to coordinate n around x, on the concave pieces.
double restricted_curvature(const Problem& p, const Generator& g, const Vector& x, Eigen::Index n, double t) {
  Vector z = x;
  z[n] = t;
  const Vector c = p.fidelity.curvature(p.A * z);
  return p.A.col(n).array().square().matrix().dot(c) - g.d2(t) + p.lambda2;
}

}  // namespace

TEST_CASE("closed-form thresholds") {
  CHECK(gamma_threshold(single_column(FidelityKind::LS, vec({3, 1}), vec({1, 2}), 0.0), PowerFamily{2.0}, 0) ==
        doctest::Approx(10.0));
  CHECK(gamma_threshold(single_column(FidelityKind::LR, vec({-1, 2}), vec({1, 0}), 0.1), PowerFamily{2.0}, 0) ==
        doctest::Approx(1.35));
  CHECK(gamma_threshold(single_column(FidelityKind::LS, vec({0, 0}), vec({1, 2}), 0.0), PowerFamily{2.0}, 0) == 0.0);
  // power p: (p lambda0)^((2-p)/2) |a|^p
  const Problem p = single_column(FidelityKind::LS, vec({3, 4}), vec({1, 2}), 0.0, 0.2);
  CHECK(gamma_threshold(p, PowerFamily{1.5}, 0) == doctest::Approx(std::pow(0.3, 0.25) * std::pow(5.0, 1.5)));
  // KL with Shannon: sqrt(lambda0 sum a^2 y / b^2)
  const Problem k = single_column(FidelityKind::KL, vec({0.5, 0.2}), vec({0.3, 1.0}), 0.0, 0.2);
  CHECK(gamma_threshold(k, ShannonFamily{}, 0) ==
        doctest::Approx(std::sqrt(0.2 * (0.25 * 0.3 + 0.04) / 0.01)));
}

TEST_CASE("unsupported pairings") {
  const Problem p = fixtures::ls2d();
  CHECK_THROWS_AS(gamma_threshold(p, ShannonFamily{}, 0), UnsupportedPairing);
  CHECK_THROWS_AS(gamma_threshold(p, KLFamily{}, 0), UnsupportedPairing);
  CHECK_THROWS_AS(calibrate(p, MatchedFamily{FidelityKind::LS}), UnsupportedPairing);
  CHECK_THROWS_AS(calibrate(p, MatchedFamily{FidelityKind::LR}), UnsupportedPairing);
}

TEST_CASE("calibrate modes") {
  const Problem p = fixtures::ls2d();
  const Calibrated c = calibrate(p, PowerFamily{2.0});
  CHECK(c.report.gamma[0] == doctest::Approx(10.0));
  CHECK(c.report.gamma[1] == doctest::Approx(10.0));
  CHECK(c.report.exact[0]);
  CHECK(c.report.column_norms[0] == doctest::Approx(10.0));
  const Calibrated s0 = calibrate(p, PowerFamily{2.0}, {CalibrationMode::Strict, 0.0});
  CHECK(s0.report.gamma == c.report.gamma);
  const Calibrated s1 = calibrate(p, PowerFamily{2.0}, {CalibrationMode::Strict, 0.1});
  CHECK(s1.report.gamma[0] == doctest::Approx(11.0));
  const CalibrationReport low = report_for(p, PowerFamily{2.0}, vec({9.0, 10.0}));
  CHECK_FALSE(low.exact[0]);
  CHECK(low.exact[1]);
}

TEST_CASE("zero column is excluded from the relaxation") {
  Problem p = fixtures::ls2d();
  p.A.col(1).setZero();
  const Calibrated c = calibrate(p, PowerFamily{2.0});
  CHECK(c.report.gamma_thr[1] == 0.0);
  CHECK(c.relaxation.generators[0].has_value());
  CHECK_FALSE(c.relaxation.generators[1].has_value());
  CHECK(c.relaxation.beta(1, 0.3) == p.lambda0);
}

TEST_CASE("closed forms agree with the generic bisection") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const auto kind = static_cast<FidelityKind>(t % 3);
    Problem p = fixtures::random_problem(kind, 4, 3, rng, t % 2 ? 0.2 : 0.0);
    std::vector<GeneratorFamily> fams = {PowerFamily{2.0}, PowerFamily{1.5}, PowerFamily{4.0 / 3.0}};
    if (kind == FidelityKind::KL) {
      fams.push_back(ShannonFamily{});
      fams.push_back(KLFamily{1.0, p.fidelity.b});
    }
    for (const auto& f : fams) {
      const double a = gamma_threshold(p, f, t % 3);
      const double b = generic_threshold(p, f, t % 3);
      CHECK(std::abs(a - b) <= 1e-8 * a);
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("concavity condition holds on a grid at the threshold") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const auto kind = static_cast<FidelityKind>(t % 3);
    const Problem p = fixtures::random_problem(kind, 3, 3, rng, 0.1);
    std::vector<GeneratorFamily> fams = {PowerFamily{2.0}, PowerFamily{1.5}};
    if (kind == FidelityKind::KL) fams.push_back(ShannonFamily{});
    if (kind == FidelityKind::KL) fams.push_back(KLFamily{1.0, 0.1});
    for (const auto& f : fams) {
      for (bool strict : {false, true}) {
        const Calibrated c = calibrate(p, f, {strict ? CalibrationMode::Strict : CalibrationMode::AtThreshold, 0.05});
        for (Eigen::Index n = 0; n < p.cols(); ++n) {
          const Generator& g = *c.relaxation.generators[static_cast<std::size_t>(n)];
          Vector x(3);
          for (int i = 0; i < 3; ++i) x[i] = kind == FidelityKind::KL ? U(rng) : 2 * U(rng) - 1;
          for (int i = 1; i < 1000; ++i) {
            const double t1 = g.alpha_plus() * i / 1000.0;
            const double v = restricted_curvature(p, g, x, n, t1);
            CHECK(v <= 1e-9 * g.d2(t1));
            if (strict) CHECK(v < 0.0);
            if (p.constraint == Constraint::Reals) {
              const double t2 = g.alpha_minus() * i / 1000.0;
              CHECK(restricted_curvature(p, g, x, n, t2) <= 1e-9 * g.d2(t2));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("threshold grows with column norm and ridge") {
  for (const GeneratorFamily& f : {GeneratorFamily{PowerFamily{2.0}}, GeneratorFamily{PowerFamily{1.5}}}) {
    double prev = 0.0;
    for (double s = 0.1; s < 5.0; s += 0.3) {
      const double g = gamma_threshold(single_column(FidelityKind::LR, vec({s, 1}), vec({1, 0}), 0.1), f, 0);
      CHECK(g >= prev);
      prev = g;
    }
    prev = 0.0;
    for (double l2 = 0.0; l2 < 3.0; l2 += 0.25) {
      const double g = gamma_threshold(single_column(FidelityKind::LS, vec({1, 1}), vec({1, 0}), l2), f, 0);
      CHECK(g >= prev);
      prev = g;
    }
  }
}

TEST_CASE("matched generator on a diagonal problem") {
  Problem p;
  p.A = Matrix::Identity(2, 2) * 1.5;
  p.fidelity = {FidelityKind::LS, vec({1, -2}), 0.0};
  p.lambda0 = 0.4;
  p.lambda2 = 0.2;
  const Calibrated c = calibrate(p, MatchedFamily{FidelityKind::LS});
  CHECK(c.report.gamma_thr[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.report.gamma_thr[1] == doctest::Approx(1.0).epsilon(1e-9));
}
