#include <doctest.h>

#include <cmath>

#include "brex/testoracle.hpp"
#include "fixtures.hpp"

using namespace brex;

TEST_CASE("grid spec") {
  GridSpec g{-1.0, 1.0, 1};
  CHECK_THROWS(g.validate());
  g = {1.0, -1.0, 10};
  CHECK_THROWS(g.validate());
  g = {-1.0, 1.0, 5};
  CHECK(g.at(0) == -1.0);
  CHECK(g.at(4) == 1.0);
  CHECK(g.at(2) == 0.0);
}

TEST_CASE("grid golden minimizer") {
  const double m = grid_golden_min([](double x) { return (x - 0.3137) * (x - 0.3137) + 1.0; }, {-2.0, 2.0, 101});
  CHECK(std::abs(m - 0.3137) < 1e-7);
  const double a = grid_golden_min([](double x) { return std::abs(x + 1.2345); }, {-2.0, 2.0, 51});
  CHECK(std::abs(a + 1.2345) < 1e-7);
  // refinement does not depend on the grid once it isolates the minimizer
  for (int pts : {201, 401, 1601}) {
    CHECK(std::abs(grid_golden_min([](double x) { return std::cos(3 * x) + 0.1 * x; }, {-1.0, 2.0, pts}) -
                   grid_golden_min([](double x) { return std::cos(3 * x) + 0.1 * x; }, {-1.0, 2.0, 101})) < 1e-7);
  }
}

TEST_CASE("convexity oracle") {
  std::vector<double> sq, bump, lin;
  for (int i = -50; i <= 50; ++i) {
    const double x = i / 10.0;
    sq.push_back(x * x);
    bump.push_back(std::exp(-x * x));
    lin.push_back(2 * x + 1);
  }
  CHECK(oracle_convexity(sq));
  CHECK(oracle_convexity(lin));
  CHECK_FALSE(oracle_convexity(bump));
  CHECK(oracle_convexity({}));
  CHECK(oracle_convexity({1.0, 0.0}));
}

TEST_CASE("oracle prox on the quadratic generator") {
  const Generator g(PowerFamily{2.0}, 0.5, 0.5);
  // rho gamma < 1 gives the continuous formula
  for (double x : {-3.0, -0.7, -0.1, 0.0, 0.2, 0.9, 2.5}) {
    const double rho = 1.0;
    const double inner = (std::abs(x) - rho * g.slope_plus()) / (1.0 - rho * g.gamma());
    const double expected = std::copysign(std::min(std::abs(x), std::max(inner, 0.0)), x);
    CHECK(std::abs(oracle_prox(g, rho, x) - expected) < 1e-6);
  }
}

TEST_CASE("S-transform properties") {
  const std::vector<Generator> gens = {Generator(PowerFamily{2.0}, 1.0, 0.5), Generator(PowerFamily{1.5}, 2.0, 0.3),
                                       Generator(ShannonFamily{}, 1.0, 0.4), Generator(KLFamily{1.0, 0.1}, 1.0, 0.4)};
  for (const auto& g : gens) {
    const double z0 = std::isfinite(g.d1(0.0)) ? 0.0 : 1e-12;
    CHECK(std::abs(oracle_s_transform(g, z0)) < 1e-9);
    const double hi = g.alpha_plus() * 3.0;
    for (int i = 1; i <= 30; ++i) {
      const double z = hi * i / 30.0;
      const double s = oracle_s_transform(g, z);
      CHECK(s <= 1e-12);
      // S(z) = -min(lambda0, d(0, z))
      CHECK(std::abs(s + std::min(g.lambda0(), g.bregman(0.0, z))) < 1e-7);
    }
  }
}

TEST_CASE("S composition recovers beta") {
  const Generator g(PowerFamily{2.0}, 1.0, 0.5);
  for (double x : {-1.5, -0.6, -0.2, 0.3, 0.8, 2.0}) {
    CHECK(std::abs(oracle_s_composition(g, x) - g.beta(x)) < 1e-4);
  }
}

TEST_CASE("beta oracle") {
  const Generator g(PowerFamily{2.0}, 2.0, 0.5);
  // quadratic: beta(x) = lambda0 - gamma/2 (|x| - alpha)^2 inside the interval
  const double a = g.alpha_plus();
  for (double x : {0.0, 0.1 * a, 0.5 * a, 0.9 * a, a, 2 * a}) {
    const double expected = std::abs(x) >= a ? 0.5 : 0.5 - (a - std::abs(x)) * (a - std::abs(x));
    CHECK(std::abs(oracle_beta(g, x) - expected) < 1e-6);
    CHECK(std::abs(oracle_beta(g, -x) - expected) < 1e-6);
  }
}
