#pragma once

#include <functional>
#include <vector>

#include "qdist/families.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

/// Eigenvalue sign counts of a symmetric matrix.
struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  bool operator==(const Signature&) const = default;
};

/// Signature with eigenvalues |e| <= tol * max(1, max|e|) counted as zero.
Signature signature_of(const Mat& symmetric, double tol = 1e-10);

/// Metric components at a parameter point.
struct MetricTensor {
  Vec point;
  Mat components;
  Signature signature;
  double scale_k = 1.0;

  /// Symmetrizes `components` and classifies the signature.
  static MetricTensor make(Vec point, const Mat& components, double scale_k = 1.0);

  double line_element(const Vec& d_theta) const { return d_theta.dot(components * d_theta); }
};

enum class FisherForm { gradient, hessian };

/// Fisher-Rao metric by quadrature, k^2 * int p d_a ln p d_b ln p (gradient
/// form) or -k^2 * int p d_ab ln p (hessian form).
///
/// Near density zeros (p < 1e-14 * max p) the gradient form switches to the
/// hessian integrand and the hessian form skips the sample; both limits are
/// finite but evaluate as 0/0.
MetricTensor fr_metric(const ParametricFamily& family, const Vec& theta,
                       FisherForm form = FisherForm::gradient, double k = 1.0,
                       const QuadratureSpec& spec = {});

/// int p [F'(p)]^2 d_a p d_b p over the support, for an arbitrary F.
MetricTensor generalized_metric(const ParametricFamily& family, const Vec& theta,
                                const std::function<double(double)>& f_prime,
                                const QuadratureSpec& spec = {});

/// Gaussian metric in the z = (x - mean) / (sqrt(2) sigma) variable with
/// p(z) = exp(-z^2) / (sqrt(2 pi) sigma):
///   g_11 = (sqrt(2)/sigma) int p^3 F'^2 (1 - 4z^2 + 4z^4) dz,
///   g_22 = c_22 / sigma   int p^3 F'^2 z^2 dz,   g_12 = 0.
/// The change of variables gives c_22 = 2 sqrt(2); `Z22Prefactor::reduced`
/// uses 1/sqrt(2), four times smaller.
enum class Z22Prefactor { derived, reduced };
MetricTensor gaussian_nonstationary_metric(double sigma, const std::function<double(double)>& f_prime,
                                           Z22Prefactor prefactor = Z22Prefactor::derived,
                                           const QuadratureSpec& spec = {});

/// Closed-form Gaussian Fisher-Rao metric, k^2 * diag(2, 1) / sigma^2 in (sigma, mean).
MetricTensor gaussian_metric_closed(const Vec& theta, double k = 1.0);

/// max |d/dp (p F'(p))| over the grid, by finite differences in log p.
double euler_lagrange_residual(const std::function<double(double)>& F, const std::vector<double>& p_grid);

/// `count` log-spaced points in [p_min, p_max].
std::vector<double> log_grid(double p_min, double p_max, int count);

/// 2 asinh(|theta2 - theta1| / (2 sqrt(sigma1 sigma2))) with the Euclidean norm
/// over (sigma, mean).
double gauss_geodesic_distance_paper(const Vec& theta1, const Vec& theta2);

/// Exact geodesic distance for the Gaussian Fisher-Rao metric:
/// sqrt(2) acosh(1 + (dsigma^2 + dmean^2 / 2) / (2 sigma1 sigma2)).
double gauss_geodesic_distance_exact(const Vec& theta1, const Vec& theta2);

}  // namespace qdist
