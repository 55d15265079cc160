#pragma once

#include <string_view>

#include "brex/types.hpp"

namespace brex {

enum class FidelityKind { LS, LR, KL };

const char* to_string(FidelityKind kind);
FidelityKind fidelity_kind_from_string(std::string_view name);

// Scalar data terms f(z; y). KL additionally depends on the background b > 0.
// All of them throw DomainError when KL is evaluated at z + b <= 0.
double f_value(FidelityKind kind, double z, double y, double b = 0.0);
double f_d1(FidelityKind kind, double z, double y, double b = 0.0);
double f_d2(FidelityKind kind, double z, double y, double b = 0.0);

/// sup over the admissible z of f''(z; y).
double curvature_sup(FidelityKind kind, double y, double b = 0.0);

/// Separable data term F_y(z) = sum_m f(z_m; y_m).
struct Fidelity {
  FidelityKind kind = FidelityKind::LS;
  Vector y;
  double b = 0.0;  // KL background, ignored otherwise

  /// Throws std::invalid_argument if y or b is inconsistent with the kind.
  void validate() const;

  Eigen::Index size() const { return y.size(); }

  double value(const Vector& z) const;
  /// Coordinate-wise f'(z_m; y_m).
  Vector gradient(const Vector& z) const;
  /// Coordinate-wise f''(z_m; y_m).
  Vector curvature(const Vector& z) const;
  /// Coordinate-wise curvature_sup.
  Vector curvature_sup() const;
  /// True when every z_m lies in the domain (KL: z_m + b > 0).
  bool in_domain(const Vector& z) const;
};

/// A^T grad F_y(Ax) together with the inner gradient grad F_y(Ax).
struct FidelityGradient {
  Vector grad;        // N
  Vector inner_grad;  // M
};

FidelityGradient grad_F(const Fidelity& fid, const Matrix& A, const Vector& x);

/// Largest singular value of A by power iteration on A^T A
/// (200 iterations or relative change below 1e-10).
double spectral_norm(const Matrix& A);

/// Lipschitz constant of grad [F_y(A .) + lambda2/2 |.|^2].
double lipschitz_L(const Fidelity& fid, const Matrix& A, double lambda2);

}  // namespace brex
