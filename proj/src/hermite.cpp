#include "qdist/hermite.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qdist/error.hpp"

namespace qdist {

double hermite_h(int n, double u) {
  if (n < 0) throw Error(ErrorKind::OutOfDomain, "dist_core", "Hermite index must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * u;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * u * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_h_values(int n_max, double u) {
  if (n_max < 0) throw Error(ErrorKind::OutOfDomain, "dist_core", "Hermite index must be >= 0");
  std::vector<double> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = 1.0;
  if (n_max >= 1) h[1] = 2.0 * u;
  for (int k = 1; k < n_max; ++k) h[k + 1] = 2.0 * u * h[k] - 2.0 * k * h[k - 1];
  return h;
}

std::vector<double> hermite_functions(int n_max, double u) {
  std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  if (n_max >= 1) phi[1] = std::sqrt(2.0) * u * phi[0];
  for (int k = 2; k <= n_max; ++k) {
    phi[k] = std::sqrt(2.0 / k) * u * phi[k - 1] - std::sqrt((k - 1.0) / k) * phi[k - 2];
  }
  return phi;
}

namespace {

// Orthonormal polynomials p_k for exp(-u^2), scaled by exp(-u^2/2) to stay
// bounded; returns phi_n, phi_{n-1} and sum_{k<n} phi_k^2.
struct HermiteTail {
  double phi_n;
  double phi_nm1;
  double sum_sq;
};

HermiteTail hermite_tail(int n, double u) {
  double pm1 = 0.0;
  double p = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  double sum_sq = 0.0;
  for (int k = 1; k <= n; ++k) {
    sum_sq += p * p;
    const double next = std::sqrt(2.0 / k) * u * p - std::sqrt((k - 1.0) / k) * pm1;
    pm1 = p;
    p = next;
  }
  return {p, pm1, sum_sq};
}

GaussHermiteRule build_rule(int n) {
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_scaled_weights.resize(n);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n == 1) {
    rule.nodes[0] = 0.0;
  } else {
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    for (int i = 0; i < n; ++i) rule.nodes[i] = solver.eigenvalues()[i];
  }

  for (int i = 0; i < n; ++i) {
    double u = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const HermiteTail t = hermite_tail(n, u);
      if (t.phi_nm1 == 0.0) break;
      // p_n' = sqrt(2n) p_{n-1}; the envelope cancels in the ratio.
      u -= t.phi_n / (std::sqrt(2.0 * n) * t.phi_nm1);
    }
    const HermiteTail t = hermite_tail(n, u);
    rule.nodes[i] = u;
    rule.log_scaled_weights[i] = -std::log(t.sum_sq);
    rule.weights[i] = std::exp(rule.log_scaled_weights[i] - u * u);
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dist_core", "Gauss-Hermite rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build_rule(n));
  return *slot;
}

}  // namespace qdist
