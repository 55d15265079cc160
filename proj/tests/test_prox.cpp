#include <doctest.h>

#include <cmath>
#include <random>

#include "brex/prox.hpp"
#include "brex/testoracle.hpp"
#include "fixtures.hpp"

using namespace brex;

namespace {

std::vector<Generator> prox_generators(double gamma) {
  return {Generator(PowerFamily{2.0}, gamma, 0.5),
          Generator(PowerFamily{1.5}, gamma, 0.5),
          Generator(PowerFamily{4.0 / 3.0}, gamma, 0.5),
          Generator(PowerFamily{1.8}, gamma, 0.5),
          Generator(PowerFamily{2.0}, gamma, 0.5, Constraint::NonnegReals),
          Generator(ShannonFamily{}, gamma, 0.5),
          Generator(KLFamily{1.0, 0.1}, gamma, 0.5),
          Generator(KLFamily{0.3, 0.4}, gamma, 0.5),
          Generator(MatchedFamily{FidelityKind::LR, 1.2, 1.0, 0.0, 0.1}, gamma, 0.5),
          Generator(MatchedFamily{FidelityKind::KL, 0.7, 0.6, 0.1, 0.0}, gamma, 0.5)};
}

}  // namespace

TEST_CASE("candidate set basics") {
  const Generator g(PowerFamily{2.0}, 1.0, 0.5);
  const double rho = 0.5;
  // x = rho psi'(alpha+) puts the shifted argument at zero: S_x = {0}
  const double x = rho * g.slope_plus();
  const auto c = candidate_set(g, rho, x);
  CHECK(c.size() == 2);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == x);
  CHECK(candidate_set(g, rho, 0.0).size() == 1);
  const Generator sh(ShannonFamily{}, 1.0, 0.5);
  CHECK(candidate_set(sh, 1.0, -1.0).size() == 1);
  // Shannon without real Lambert solutions: exponent argument below -1/e
  const double rg = 0.2 * 1.0;
  const double xs = 0.2 * sh.slope_plus() + rg * (-std::log(rg) + 0.5);  // log(-z) = -0.5 > -1
  CHECK(candidate_set(sh, 0.2, xs).size() == 2);
}

TEST_CASE("candidates solve their defining equation") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> U(-3.0, 3.0), R(0.01, 3.0), G(0.2, 3.0);
  for (int t = 0; t < 3000; ++t) {
    for (const auto& g : prox_generators(G(rng))) {
      const double x = U(rng), rho = R(rng);
      const auto c = candidate_set(g, rho, x);
      for (std::size_t i = 2; i < c.size(); ++i) {
        CHECK(std::abs(candidate_residual(g, rho, x, c[i])) <= 1e-8 * std::max(1.0, std::abs(x)));
      }
    }
  }
}

TEST_CASE("p = 2 continuous formula when rho gamma < 1") {
  const Generator g(PowerFamily{2.0}, 0.8, 0.5);
  const double rho = 1.0;
  for (double x = -4.0; x <= 4.0; x += 0.01) {
    const double ax = std::abs(x);
    const double inner = (ax - rho * g.slope_plus()) / (1.0 - rho * g.gamma());
    const double expected = (x < 0 ? -1.0 : 1.0) * std::min(ax, std::max(inner, 0.0));
    CHECK(prox_beta(g, rho, x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("hard threshold regime") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-4.0, 4.0);
  for (const auto& g : prox_generators(3.0)) {
    const double rho = 1.01 / g.inf_curvature();
    const double thr = std::sqrt(2 * rho * g.lambda0());
    for (int i = 0; i < 500; ++i) {
      const double x = U(rng);
      if (std::abs(std::abs(x) - thr) < 1e-9) continue;
      const double expected = std::abs(x) > thr ? project(g.constraint(), x) : 0.0;
      CHECK(prox_beta(g, rho, x) == expected);
      CHECK(prox_l0(g.lambda0(), g.constraint(), rho, x) == expected);
    }
    // the tie point selects 0
    CHECK(prox_l0(g.lambda0(), g.constraint(), 0.5, 1.0 / std::sqrt(1.0 / (2 * 0.5 * g.lambda0()))) == 0.0);
  }
}

TEST_CASE("continuous regime") {
  for (const auto& g : prox_generators(0.5)) {
    const auto sup = g.sup_curvature();
    if (!sup) continue;
    const double rho = 0.9 / *sup;
    double prev = prox_beta(g, rho, -3.0);
    const double h = 6.0 / 10000;
    for (int i = 1; i <= 10000; ++i) {
      const double x = -3.0 + i * h;
      const double u = prox_beta(g, rho, x);
      // prox of a function with curvature >= -sup is Lipschitz with constant 1/(1 - rho sup)
      CHECK(std::abs(u - prev) <= 10.0 * h / (1.0 - rho * *sup));
      prev = u;
    }
  }
}

TEST_CASE("fixed points") {
  for (const auto& g : prox_generators(1.3)) {
    for (double rho : {0.1, 1.0, 5.0}) {
      CHECK(prox_beta(g, rho, 0.0) == 0.0);
      const double x = g.alpha_plus() + rho * g.slope_plus() + 0.5;
      if (rho * g.slope_plus() >= 0.0) CHECK(prox_beta(g, rho, x) == x);
    }
  }
}

TEST_CASE("prox against the grid oracle") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> U(-3.0, 3.0), R(0.05, 4.0), G(0.2, 4.0);
  for (int t = 0; t < 150; ++t) {
    for (const auto& g : prox_generators(G(rng))) {
      const double x = U(rng), rho = R(rng);
      const double u = prox_beta(g, rho, x);
      CHECK(feasible(g.constraint(), u));
      const double o = oracle_prox(g, rho, x, 5000);
      const double fu = prox_objective(g, rho, x, u), fo = prox_objective(g, rho, x, o);
      CHECK(fu <= fo + 1e-8 * std::max(1.0, std::abs(fo)));
    }
  }
}

TEST_CASE("prox_vector is coordinatewise") {
  Relaxation r = Relaxation::l0(0.5, Constraint::Reals, 3);
  r.generators[0].emplace(PowerFamily{2.0}, 0.5, 0.5);
  r.generators[2].emplace(PowerFamily{1.5}, 0.5, 0.5);
  const Vector x = fixtures::vec({0.8, 0.9, -2.0});
  const Vector u = prox_vector(r, 0.7, x);
  CHECK(u[0] == prox_beta(*r.generators[0], 0.7, 0.8));
  CHECK(u[1] == prox_l0(0.5, Constraint::Reals, 0.7, 0.9));
  CHECK(u[2] == prox_beta(*r.generators[2], 0.7, -2.0));
}
