#pragma once

#include <optional>
#include <string>
#include <variant>

#include "brex/fidelity.hpp"
#include "brex/types.hpp"

namespace brex {

/// psi(x) = |x|^p / (p (p-1)), p in (1, 2].
struct PowerFamily {
  double p = 2.0;
};

/// psi(x) = x log x - x + 1 on x >= 0, psi(0) = 1.
struct ShannonFamily {};

/// psi(x) = x + b - y log(x + b) on x >= 0.
struct KLFamily {
  double y = 1.0;
  double b = 0.1;
};

/// psi(x) = f(a x; y) + lambda2/2 x^2 for a scalar data term f.
struct MatchedFamily {
  FidelityKind fidelity = FidelityKind::LS;
  double a = 1.0;
  double y = 0.0;
  double b = 0.0;
  double lambda2 = 0.0;
};

using GeneratorFamily = std::variant<PowerFamily, ShannonFamily, KLFamily, MatchedFamily>;

std::string describe(const GeneratorFamily& family);

/// One generating function psi_n = gamma * psi together with the quantities
/// that define its l0 Bregman relaxation: the lambda0-sublevel bounds
/// [alpha-, alpha+] of d(0, .) and the subdifferential bounds at 0,
/// ell+- = psi'(alpha+-) - psi'(0).
///
/// Immutable after construction. Shannon and KL force the nonnegative
/// constraint, as does a matched KL data term.
class Generator {
 public:
  Generator(GeneratorFamily family, double gamma, double lambda0,
            Constraint constraint = Constraint::Reals);

  const GeneratorFamily& family() const { return family_; }
  double gamma() const { return gamma_; }
  double lambda0() const { return lambda0_; }
  Constraint constraint() const { return constraint_; }

  /// gamma psi(x); throws DomainError outside C.
  double value(double x) const;
  /// gamma psi'(x). For Shannon at x = 0 this is -infinity.
  double d1(double x) const;
  /// gamma psi''(x). Power with p < 2 gives +infinity at 0.
  double d2(double x) const;

  /// d(x, z) = psi(x) - psi(z) - psi'(z)(x - z). z must be interior where
  /// psi' is finite.
  double bregman(double x, double z) const;

  double alpha_minus() const { return alpha_minus_; }
  double alpha_plus() const { return alpha_plus_; }

  /// nullopt stands for an unbounded side of the interval.
  std::optional<double> ell_minus() const { return ell_minus_; }
  std::optional<double> ell_plus() const { return ell_plus_; }

  /// psi'(alpha-) and psi'(alpha+); the slopes of the two concave pieces.
  double slope_minus() const { return slope_minus_; }
  double slope_plus() const { return slope_plus_; }

  /// The 1D relaxation beta(x): concave on [alpha-, 0] and [0, alpha+],
  /// lambda0 outside.
  double beta(double x) const;

  /// inf of psi'' over (alpha-, alpha+) \ {0}.
  double inf_curvature() const;
  /// sup of psi'' over C, nullopt when unbounded.
  std::optional<double> sup_curvature() const;

 private:
  void check_domain(double x) const;
  void compute_bounds();
  double bisect_alpha(double direction) const;
  double polish_alpha(double alpha) const;

  GeneratorFamily family_;
  double gamma_;
  double lambda0_;
  Constraint constraint_;

  double alpha_minus_ = 0.0;
  double alpha_plus_ = 0.0;
  double slope_minus_ = 0.0;
  double slope_plus_ = 0.0;
  std::optional<double> ell_minus_;
  std::optional<double> ell_plus_;
};

/// inf of psi'' over (alpha-, alpha+) \ {0} by grid scan and golden
/// refinement; works for any family.
double numeric_inf_curvature(const Generator& g);

}  // namespace brex
