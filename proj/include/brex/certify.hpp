#pragma once

#include <optional>
#include <vector>

#include "brex/problem.hpp"

namespace brex {

inline constexpr double kIntervalSlack = 1e-8;

struct CertRecord {
  std::vector<Eigen::Index> support;
  bool is_critical_JPsi = false;
  bool is_localmin_JPsi = false;
  bool is_localmin_J0 = false;
  bool is_strict = false;
  double max_residual = 0.0;
  /// Nonzero coordinates inside [alpha-, alpha+].
  std::vector<Eigen::Index> interval_violations;
  /// Coordinates within the interval slack of alpha- or alpha+.
  std::vector<Eigen::Index> boundary_hits;
};

struct CriticalCheck {
  bool critical = false;
  double max_residual = 0.0;
  std::vector<Eigen::Index> boundary_hits;
};

std::vector<Eigen::Index> support_of(const Vector& x);

/// Generalized stationarity of J_Psi coordinate by coordinate: the interval
/// test -<a_n, grad F> in [ell-, ell+] at zeros, the concave-piece equation
/// inside [alpha-, alpha+], plain stationarity outside.
CriticalCheck check_critical_JPsi(const Problem& p, const Relaxation& r, const Vector& x, double tol = 1e-6);

/// Critical point with every nonzero coordinate strictly outside
/// [alpha-, alpha+]; strictness from lambda2 > 0 or full column rank of A_sigma.
CertRecord check_localmin_JPsi(const Problem& p, const Relaxation& r, const Vector& x, double tol = 1e-6);

/// Restricted stationarity A_s^T grad F(A x) + lambda2 x_s = 0 on the support.
bool check_localmin_J0(const Problem& p, const Vector& x, double tol = 1e-6, double* residual = nullptr);

/// lambda2 > 0 or rank(A_support) = |support|.
bool is_strict_support(const Problem& p, const std::vector<Eigen::Index>& support);

/// Whether a local minimizer of J_0 stays a local minimizer of J_Psi.
bool check_preserved(const Problem& p, const Relaxation& r, const Vector& x);

/// Zeroes coordinates in the open interval (alpha-, alpha+).
Vector threshold_to_J0(const Relaxation& r, const Vector& x);

struct Minimizer {
  Vector x;
  double J0 = 0.0;
  CertRecord cert;
  std::optional<bool> preserved;  // set when a relaxation is supplied
};

struct Enumeration {
  std::vector<Minimizer> minimizers;  // ascending J0
  std::size_t supports_tried = 0;
  std::size_t supports_skipped = 0;  // restricted solve did not converge
};

/// Every local minimizer of J_0 with support size <= max_support, from the
/// restricted convex problem on each support. Throws CombinatorialLimit when
/// N > 20 or more than 1e6 supports would be visited.
Enumeration enumerate_minimizers(const Problem& p, int max_support, const Relaxation* r = nullptr);

}  // namespace brex
