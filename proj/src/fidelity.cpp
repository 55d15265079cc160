#include "brex/fidelity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "brex/errors.hpp"

namespace brex {

const char* to_string(Constraint c) {
  return c == Constraint::Reals ? "reals" : "nonneg";
}

const char* to_string(FidelityKind kind) {
  switch (kind) {
    case FidelityKind::LS: return "LS";
    case FidelityKind::LR: return "LR";
    case FidelityKind::KL: return "KL";
  }
  return "?";
}

FidelityKind fidelity_kind_from_string(std::string_view name) {
  if (name == "LS" || name == "ls") return FidelityKind::LS;
  if (name == "LR" || name == "lr") return FidelityKind::LR;
  if (name == "KL" || name == "kl") return FidelityKind::KL;
  throw std::invalid_argument("unknown fidelity kind '" + std::string(name) + "'");
}

namespace {

double kl_shift(double z, double b) {
  const double s = z + b;
  if (!(s > 0.0)) {
    throw DomainError("KL fidelity evaluated at z + b = " + std::to_string(s) + " <= 0");
  }
  return s;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double f_value(FidelityKind kind, double z, double y, double b) {
  switch (kind) {
    case FidelityKind::LS: return 0.5 * (z - y) * (z - y);
    case FidelityKind::LR: return std::max(z, 0.0) - y * z + std::log1p(std::exp(-std::abs(z)));
    case FidelityKind::KL: {
      const double s = kl_shift(z, b);
      return y == 0.0 ? s : s - y * std::log(s);
    }
  }
  return 0.0;
}

double f_d1(FidelityKind kind, double z, double y, double b) {
  switch (kind) {
    case FidelityKind::LS: return z - y;
    case FidelityKind::LR: return sigmoid(z) - y;
    case FidelityKind::KL: return 1.0 - y / kl_shift(z, b);
  }
  return 0.0;
}

double f_d2(FidelityKind kind, double z, double y, double b) {
  switch (kind) {
    case FidelityKind::LS: return 1.0;
    case FidelityKind::LR: {
      const double s = sigmoid(z);
      return s * (1.0 - s);
    }
    case FidelityKind::KL: {
      const double s = kl_shift(z, b);
      return y / (s * s);
    }
  }
  return 0.0;
}

double curvature_sup(FidelityKind kind, double y, double b) {
  switch (kind) {
    case FidelityKind::LS: return 1.0;
    case FidelityKind::LR: return 0.25;
    case FidelityKind::KL: return y / (b * b);
  }
  return 0.0;
}

void Fidelity::validate() const {
  if (y.size() < 1) throw std::invalid_argument("fidelity needs at least one observation");
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    const double v = y[m];
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite observation");
    if (kind == FidelityKind::LR && v != 0.0 && v != 1.0) {
      throw std::invalid_argument("LR observations must be 0 or 1");
    }
    if (kind == FidelityKind::KL && v < 0.0) {
      throw std::invalid_argument("KL observations must be nonnegative");
    }
  }
  if (kind == FidelityKind::KL && !(b > 0.0)) {
    throw std::invalid_argument("KL fidelity needs a background b > 0");
  }
}

double Fidelity::value(const Vector& z) const {
  double acc = 0.0;
  for (Eigen::Index m = 0; m < z.size(); ++m) acc += f_value(kind, z[m], y[m], b);
  return acc;
}

Vector Fidelity::gradient(const Vector& z) const {
  Vector g(z.size());
  for (Eigen::Index m = 0; m < z.size(); ++m) g[m] = f_d1(kind, z[m], y[m], b);
  return g;
}

Vector Fidelity::curvature(const Vector& z) const {
  Vector g(z.size());
  for (Eigen::Index m = 0; m < z.size(); ++m) g[m] = f_d2(kind, z[m], y[m], b);
  return g;
}

Vector Fidelity::curvature_sup() const {
  Vector s(y.size());
  for (Eigen::Index m = 0; m < y.size(); ++m) s[m] = brex::curvature_sup(kind, y[m], b);
  return s;
}

bool Fidelity::in_domain(const Vector& z) const {
  if (kind != FidelityKind::KL) return true;
  return ((z.array() + b) > 0.0).all();
}

FidelityGradient grad_F(const Fidelity& fid, const Matrix& A, const Vector& x) {
  FidelityGradient out;
  out.inner_grad = fid.gradient(A * x);
  out.grad = A.transpose() * out.inner_grad;
  return out;
}

double spectral_norm(const Matrix& A) {
  const Eigen::Index n = A.cols();
  if (n == 0 || A.rows() == 0) return 0.0;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i) / static_cast<double>(n);
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    Vector w = A.transpose() * (A * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    const bool done = std::abs(next - sigma2) <= 1e-10 * next;
    sigma2 = next;
    if (done) break;
  }
  return std::sqrt(sigma2);
}

double lipschitz_L(const Fidelity& fid, const Matrix& A, double lambda2) {
  switch (fid.kind) {
    case FidelityKind::LS: {
      const double s = spectral_norm(A);
      return s * s + lambda2;
    }
    case FidelityKind::LR: {
      const double s = spectral_norm(A);
      return 0.25 * s * s + lambda2;
    }
    case FidelityKind::KL: {
      // Hessian is A^T diag(y/(Ax+b)^2) A <= A^T diag(y/b^2) A on the nonneg orthant.
      const Matrix weighted = fid.y.array().sqrt().matrix().asDiagonal() * A;
      const double s = spectral_norm(weighted);
      return s * s / (fid.b * fid.b) + lambda2;
    }
  }
  return 0.0;
}

}  // namespace brex
