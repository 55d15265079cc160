#include <doctest.h>

#include <cmath>
#include <random>

#include "brex/errors.hpp"
#include "brex/fidelity.hpp"
#include "fixtures.hpp"

using namespace brex;
using fixtures::vec;

TEST_CASE("scalar fidelity values") {
  CHECK(f_value(FidelityKind::LS, 0.0, 0.0) == 0.0);
  CHECK(f_value(FidelityKind::LR, 0.0, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(f_value(FidelityKind::KL, 0.9, 1.0, 0.1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f_d2(FidelityKind::LS, 12.3, 4.0) == 1.0);
  CHECK(f_d1(FidelityKind::LR, 0.0, 0.0) == 0.5);
  CHECK(f_d2(FidelityKind::KL, 0.0, 1.0, 0.1) == doctest::Approx(100.0).epsilon(1e-14));
  // log 2 against its series sum_{k>=1} (-1)^{k+1}/k, accelerated by averaging partial sums
  double s = 0.0, prev = 0.0;
  for (int k = 1; k <= 200001; ++k) {
    prev = s;
    s += (k % 2 ? 1.0 : -1.0) / k;
  }
  CHECK(f_value(FidelityKind::LR, 0.0, 1.0) == doctest::Approx(0.5 * (s + prev)).epsilon(1e-10));
}

TEST_CASE("KL outside its domain") {
  CHECK_THROWS_AS(f_value(FidelityKind::KL, -0.1, 1.0, 0.1), DomainError);
  CHECK_THROWS_AS(f_d1(FidelityKind::KL, -0.2, 1.0, 0.1), DomainError);
  CHECK_THROWS_AS(f_d2(FidelityKind::KL, -1.0, 1.0, 0.1), DomainError);
}

TEST_CASE("curvature suprema") {
  CHECK(curvature_sup(FidelityKind::LS, 3.0) == 1.0);
  CHECK(curvature_sup(FidelityKind::LR, 1.0) == 0.25);
  CHECK(curvature_sup(FidelityKind::KL, 2.0, 0.1) == doctest::Approx(200.0));
}

TEST_CASE("derivatives match finite differences") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-5.0, 5.0), P(0.0, 3.0);
  for (int t = 0; t < 10000; ++t) {
    const auto kind = static_cast<FidelityKind>(t % 3);
    double y = kind == FidelityKind::LS ? U(rng) : kind == FidelityKind::LR ? (t % 2) : P(rng);
    const double b = 0.1 + P(rng);
    double z = kind == FidelityKind::KL ? P(rng) : U(rng);
    const double h = 1e-5 * (1.0 + std::abs(z));
    const double fd1 = (f_value(kind, z + h, y, b) - f_value(kind, z - h, y, b)) / (2 * h);
    const double fd2 = (f_d1(kind, z + h, y, b) - f_d1(kind, z - h, y, b)) / (2 * h);
    const double d1 = f_d1(kind, z, y, b), d2 = f_d2(kind, z, y, b);
    CHECK(std::abs(fd1 - d1) <= 1e-6 * std::max(1.0, std::abs(d1)));
    CHECK(std::abs(fd2 - d2) <= 1e-5 * std::max(1.0, std::abs(d2)));
    CHECK(d2 <= curvature_sup(kind, y, b) * (1 + 1e-12));
  }
}

TEST_CASE("logistic loss is stable and nonnegative") {
  for (double z = -700.0; z <= 700.0; z += 0.7) {
    for (double y : {0.0, 1.0}) {
      const double v = f_value(FidelityKind::LR, z, y);
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
      CHECK(std::isfinite(f_d1(FidelityKind::LR, z, y)));
    }
  }
  CHECK(f_value(FidelityKind::LR, 700.0, 0.0) == doctest::Approx(700.0));
}

TEST_CASE("grad_F examples and finite differences") {
  const Matrix I2 = Matrix::Identity(2, 2);
  Fidelity ls{FidelityKind::LS, vec({1, 2}), 0.0};
  CHECK(grad_F(ls, I2, vec({1, 2})).grad.norm() == 0.0);
  const auto g = grad_F(ls, fixtures::mat2(3, 1, 1, 3), vec({0, 0.7}));
  CHECK(g.grad[0] == doctest::Approx(-0.8));
  CHECK(std::abs(g.grad[1]) < 1e-14);
  Fidelity kl{FidelityKind::KL, vec({0.7}), 0.1};
  CHECK(std::abs(grad_F(kl, Matrix::Identity(1, 1), vec({0.6})).grad[0]) < 1e-15);

  std::mt19937_64 rng(3);
  for (auto kind : {FidelityKind::LS, FidelityKind::LR, FidelityKind::KL}) {
    Problem p = fixtures::random_problem(kind, 5, 4, rng);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vector x(4);
    for (int i = 0; i < 4; ++i) x[i] = U(rng);
    const Vector grad = grad_F(p.fidelity, p.A, x).grad;
    for (int i = 0; i < 4; ++i) {
      Vector e = Vector::Zero(4);
      e[i] = 1e-6;
      const double fd = (p.fidelity.value(p.A * (x + e)) - p.fidelity.value(p.A * (x - e))) / 2e-6;
      CHECK(std::abs(fd - grad[i]) <= 1e-6 * std::max(1.0, std::abs(grad[i])));
    }
  }
}

TEST_CASE("Lipschitz constants") {
  Fidelity ls{FidelityKind::LS, vec({0, 0}), 0.0};
  CHECK(lipschitz_L(ls, Matrix::Identity(2, 2), 0.0) == doctest::Approx(1.0));
  CHECK(lipschitz_L(ls, fixtures::mat2(3, 1, 1, 3), 0.0) == doctest::Approx(16.0).epsilon(1e-9));
  Fidelity kl{FidelityKind::KL, vec({1, 1}), 0.1};
  CHECK(lipschitz_L(kl, Matrix::Identity(2, 2), 0.0) == doctest::Approx(100.0).epsilon(1e-9));
  Fidelity lr{FidelityKind::LR, vec({0, 1}), 0.0};
  CHECK(lipschitz_L(lr, fixtures::mat2(3, 1, 1, 3), 0.5) == doctest::Approx(4.5).epsilon(1e-9));
  CHECK(spectral_norm(Matrix::Zero(3, 2)) == 0.0);
}

TEST_CASE("fidelity validation") {
  CHECK_THROWS_AS((Fidelity{FidelityKind::LR, vec({0.5}), 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Fidelity{FidelityKind::KL, vec({-1}), 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Fidelity{FidelityKind::KL, vec({1}), 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Fidelity{FidelityKind::LS, Vector(), 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((Fidelity{FidelityKind::LR, vec({0, 1}), 0.0}.validate()));
  CHECK(fidelity_kind_from_string("kl") == FidelityKind::KL);
  CHECK_THROWS(fidelity_kind_from_string("huber"));
}
