#include "brex/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brex/errors.hpp"

namespace brex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double interval_distance(double v, double lo, double hi) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return 0.0;
}

Matrix columns(const Matrix& A, const std::vector<Eigen::Index>& idx) {
  Matrix out(A.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = A.col(idx[j]);
  return out;
}

// Stationary point of F(B z) + lambda2/2 |z|^2; false when Newton fails.
bool restricted_solve(const Problem& p, const Matrix& B, Vector& z) {
  const Eigen::Index k = B.cols();
  if (p.fidelity.kind == FidelityKind::LS) {
    const Matrix H = B.transpose() * B + p.lambda2 * Matrix::Identity(k, k);
    const Vector rhs = B.transpose() * p.fidelity.y;
    Eigen::LDLT<Matrix> ldlt(H);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.vectorD().minCoeff() > 1e-12 * H.norm()) {
      z = ldlt.solve(rhs);
    } else {
      z = B.completeOrthogonalDecomposition().solve(p.fidelity.y);
    }
    return z.allFinite();
  }
  z = Vector::Zero(k);
  auto value = [&](const Vector& v) {
    const Vector t = B * v;
    if (!p.fidelity.in_domain(t)) return kInf;
    return p.fidelity.value(t) + 0.5 * p.lambda2 * v.squaredNorm();
  };
  double fz = value(z);
  for (int it = 0; it < 100; ++it) {
    const Vector t = B * z;
    const Vector g = B.transpose() * p.fidelity.gradient(t) + p.lambda2 * z;
    if (g.lpNorm<Eigen::Infinity>() <= 1e-12) return true;
    Matrix H = B.transpose() * p.fidelity.curvature(t).asDiagonal() * B + p.lambda2 * Matrix::Identity(k, k);
    Eigen::LDLT<Matrix> ldlt(H);
    Vector d;
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) d = -ldlt.solve(g);
    if (d.size() != k || !d.allFinite() || d.dot(g) >= 0.0) {
      H += (1e-8 * (1.0 + H.diagonal().cwiseAbs().maxCoeff())) * Matrix::Identity(k, k);
      d = -H.ldlt().solve(g);
      if (!d.allFinite() || d.dot(g) >= 0.0) return false;
    }
    double step = 1.0;
    double fn = value(z + d);
    int shrink = 0;
    while (!(fn <= fz + 1e-4 * step * g.dot(d))) {
      step *= 0.5;
      if (++shrink > 60) break;
      fn = value(z + step * d);
    }
    if (shrink > 60) {
      // no decrease possible at working precision
      return g.lpNorm<Eigen::Infinity>() <= 1e-9;
    }
    z += step * d;
    fz = fn;
    if ((step * d).norm() <= 1e-15 * (1.0 + z.norm())) {
      const Vector g2 = B.transpose() * p.fidelity.gradient(B * z) + p.lambda2 * z;
      return g2.lpNorm<Eigen::Infinity>() <= 1e-9;
    }
  }
  const Vector g = B.transpose() * p.fidelity.gradient(B * z) + p.lambda2 * z;
  return g.lpNorm<Eigen::Infinity>() <= 1e-9;
}

double binomial_sum(int n, int kmax) {
  double total = 0.0, c = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    total += c;
    c = c * (n - k) / (k + 1);
  }
  return total;
}

}  // namespace

std::vector<Eigen::Index> support_of(const Vector& x) {
  std::vector<Eigen::Index> s;
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    if (x[n] != 0.0) s.push_back(n);
  }
  return s;
}

CriticalCheck check_critical_JPsi(const Problem& p, const Relaxation& r, const Vector& x, double tol) {
  CriticalCheck out;
  const Vector v = p.A.transpose() * p.fidelity.gradient(p.A * x);
  bool ok = true;
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    const double xn = x[n];
    if (!feasible(p.constraint, xn)) {
      ok = false;
      out.max_residual = kInf;
      continue;
    }
    const auto& g = r.generators[static_cast<std::size_t>(n)];
    double res = 0.0;
    if (xn == 0.0) {
      if (g) {
        const double lo = g->ell_minus() ? *g->ell_minus() : -kInf;
        const double hi = g->ell_plus() ? *g->ell_plus() : kInf;
        const double dist = interval_distance(-v[n], lo, hi);
        if (dist > kIntervalSlack) ok = false;
        res = dist;
      }
    } else if (g && xn > 0.0 && xn <= g->alpha_plus()) {
      res = std::abs(v[n] + p.lambda2 * xn - g->d1(xn) + g->slope_plus());
    } else if (g && xn < 0.0 && xn >= g->alpha_minus()) {
      res = std::abs(v[n] + p.lambda2 * xn - g->d1(xn) + g->slope_minus());
    } else {
      res = std::abs(v[n] + p.lambda2 * xn);
    }
    if (xn != 0.0 && res > tol) ok = false;
    out.max_residual = std::max(out.max_residual, res);
    if (g && xn != 0.0 &&
        (std::abs(xn - g->alpha_plus()) <= kIntervalSlack ||
         (p.constraint == Constraint::Reals && std::abs(xn - g->alpha_minus()) <= kIntervalSlack))) {
      out.boundary_hits.push_back(n);
    }
  }
  out.critical = ok;
  return out;
}

bool is_strict_support(const Problem& p, const std::vector<Eigen::Index>& support) {
  if (p.lambda2 > 0.0 || support.empty()) return true;
  const Matrix B = columns(p.A, support);
  Eigen::JacobiSVD<Matrix> svd(B);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return false;
  const Eigen::Index rank = (s.array() > 1e-10 * s[0]).count();
  return rank == static_cast<Eigen::Index>(support.size());
}

bool check_localmin_J0(const Problem& p, const Vector& x, double tol, double* residual) {
  double worst = 0.0;
  bool ok = true;
  const auto support = support_of(x);
  if (!support.empty()) {
    const Vector v = p.A.transpose() * p.fidelity.gradient(p.A * x);
    for (Eigen::Index n : support) {
      if (!feasible(p.constraint, x[n])) ok = false;
      worst = std::max(worst, std::abs(v[n] + p.lambda2 * x[n]));
    }
  }
  if (residual) *residual = worst;
  return ok && worst <= tol;
}

CertRecord check_localmin_JPsi(const Problem& p, const Relaxation& r, const Vector& x, double tol) {
  CertRecord rec;
  rec.support = support_of(x);
  const CriticalCheck crit = check_critical_JPsi(p, r, x, tol);
  rec.is_critical_JPsi = crit.critical;
  rec.max_residual = crit.max_residual;
  rec.boundary_hits = crit.boundary_hits;
  for (Eigen::Index n : rec.support) {
    if (x[n] >= r.alpha_minus(n) && x[n] <= r.alpha_plus(n)) rec.interval_violations.push_back(n);
  }
  rec.is_localmin_JPsi = rec.is_critical_JPsi && rec.interval_violations.empty();
  rec.is_localmin_J0 = check_localmin_J0(p, x, tol);
  rec.is_strict = is_strict_support(p, rec.support);
  return rec;
}

bool check_preserved(const Problem& p, const Relaxation& r, const Vector& x) {
  const Vector v = p.A.transpose() * p.fidelity.gradient(p.A * x);
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    const auto& g = r.generators[static_cast<std::size_t>(n)];
    if (!g) continue;
    if (x[n] != 0.0) {
      if (x[n] >= g->alpha_minus() && x[n] <= g->alpha_plus()) return false;
    } else {
      const double lo = g->ell_minus() ? *g->ell_minus() : -kInf;
      const double hi = g->ell_plus() ? *g->ell_plus() : kInf;
      if (interval_distance(-v[n], lo, hi) > kIntervalSlack) return false;
    }
  }
  return true;
}

Vector threshold_to_J0(const Relaxation& r, const Vector& x) {
  Vector out = x;
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    if (x[n] > r.alpha_minus(n) && x[n] < r.alpha_plus(n)) out[n] = 0.0;
  }
  return out;
}

Enumeration enumerate_minimizers(const Problem& p, int max_support, const Relaxation* r) {
  const int N = static_cast<int>(p.cols());
  if (max_support < 0 || max_support > N) max_support = N;
  if (N > 20 || binomial_sum(N, max_support) > 1e6) {
    throw CombinatorialLimit("support enumeration over N = " + std::to_string(N) + " exceeds the guard");
  }
  Enumeration out;
  std::vector<Eigen::Index> support;
  auto consider = [&](const std::vector<Eigen::Index>& sigma) {
    ++out.supports_tried;
    Vector x = Vector::Zero(N);
    if (!sigma.empty()) {
      Vector z;
      if (!restricted_solve(p, columns(p.A, sigma), z)) {
        ++out.supports_skipped;
        return;
      }
      for (std::size_t j = 0; j < sigma.size(); ++j) {
        const double v = z[static_cast<Eigen::Index>(j)];
        if (p.constraint == Constraint::NonnegReals && !(v > 0.0)) return;
        x[sigma[j]] = v;
      }
    }
    if (!p.fidelity.in_domain(p.A * x)) return;
    for (const auto& m : out.minimizers) {
      if ((m.x - x).lpNorm<Eigen::Infinity>() <= 1e-9 * std::max(1.0, x.lpNorm<Eigen::Infinity>())) return;
    }
    Minimizer m;
    m.x = x;
    m.J0 = objective_J0(p, x);
    if (r) {
      m.cert = check_localmin_JPsi(p, *r, x);
      m.preserved = check_preserved(p, *r, x);
    } else {
      m.cert.support = support_of(x);
      m.cert.is_strict = is_strict_support(p, m.cert.support);
      m.cert.is_localmin_J0 = check_localmin_J0(p, x, 1e-6, &m.cert.max_residual);
    }
    out.minimizers.push_back(std::move(m));
  };
  // supports in order of size, lexicographic within a size
  for (int k = 0; k <= max_support; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      support.assign(idx.begin(), idx.end());
      consider(support);
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == N - k + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  std::stable_sort(out.minimizers.begin(), out.minimizers.end(),
                   [](const Minimizer& a, const Minimizer& b) { return a.J0 < b.J0; });
  return out;
}

}  // namespace brex
