#include "qdist/fisher_rao.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qdist/error.hpp"

namespace qdist {

Signature signature_of(const Mat& symmetric, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetric, Eigen::EigenvaluesOnly);
  const Vec& ev = solver.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Signature s;
  for (double e : ev) {
    if (std::abs(e) <= tol * scale) {
      ++s.n_zero;
    } else if (e > 0) {
      ++s.n_plus;
    } else {
      ++s.n_minus;
    }
  }
  return s;
}

MetricTensor MetricTensor::make(Vec point, const Mat& components, double scale_k) {
  MetricTensor t;
  t.point = std::move(point);
  t.components = 0.5 * (components + components.transpose());
  t.signature = signature_of(t.components);
  t.scale_k = scale_k;
  return t;
}

namespace {

constexpr double kNodeRatio = 1e-14;
constexpr double kDensityFloor = 1e-300;

// Rough max of p over the support, used only for the node threshold.
double density_peak(const ParametricFamily& family, const Vec& theta, const Support& support) {
  double peak = 0.0;
  constexpr int samples = 801;
  for (int i = 1; i < samples; ++i) {
    double x;
    if (support.kind == Support::Kind::real_line) {
      const double t = -1.0 + 2.0 * i / samples;
      x = support.center + support.scale * t / (1.0 - t * t);
    } else {
      x = support.lo + (support.hi - support.lo) * i / samples;
    }
    const double p = family.density(x, theta);
    if (std::isfinite(p)) peak = std::max(peak, p);
  }
  return peak;
}

// Packs the upper triangle of a symmetric d x d matrix.
Eigen::VectorXcd pack(const Mat& m) {
  const int d = static_cast<int>(m.rows());
  Eigen::VectorXcd v(d * (d + 1) / 2);
  int idx = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) v[idx++] = m(a, b);
  }
  return v;
}

Mat unpack(const Eigen::VectorXcd& v, int d) {
  Mat m(d, d);
  int idx = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) m(a, b) = m(b, a) = v[idx++].real();
  }
  return m;
}

MetricTensor metric_quadrature(const ParametricFamily& family, const Vec& theta,
                               const std::function<Mat(double, double)>& integrand, double k,
                               const QuadratureSpec& spec) {
  const Support support = family.support(theta);
  const int d = family.dim_params;
  auto packed = [&](double x) {
    const double p = family.density(x, theta);
    if (!(p > 0.0)) return Eigen::VectorXcd(Eigen::VectorXcd::Zero(d * (d + 1) / 2));
    Mat m = integrand(x, p);
    if (!m.allFinite()) m.setZero();
    return pack(m);
  };
  try {
    const QuadResult<Eigen::VectorXcd> r = integrate(packed, support, spec);
    return MetricTensor::make(theta, unpack(r.value, d), k);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonConvergent) {
      throw Error(ErrorKind::QuadratureFailure, "fisher_rao", e.what());
    }
    throw;
  }
}

}  // namespace

MetricTensor fr_metric(const ParametricFamily& family, const Vec& theta, FisherForm form, double k,
                       const QuadratureSpec& spec) {
  family.require_in_domain(theta);
  const double threshold = kNodeRatio * density_peak(family, theta, family.support(theta));
  const double k2 = k * k;
  auto hessian_term = [&](double x, double p) -> Mat { return -k2 * p * family.hessian(x, theta); };
  if (form == FisherForm::hessian) {
    return metric_quadrature(
        family, theta,
        [&](double x, double p) -> Mat {
          if (p < threshold) return Mat::Zero(family.dim_params, family.dim_params);
          return hessian_term(x, p);
        },
        k, spec);
  }
  return metric_quadrature(
      family, theta,
      [&](double x, double p) -> Mat {
        if (p < threshold) return hessian_term(x, p);
        const Vec g = family.grad_log_density(x, theta);
        return k2 * p * g * g.transpose();
      },
      k, spec);
}

MetricTensor generalized_metric(const ParametricFamily& family, const Vec& theta,
                                const std::function<double(double)>& f_prime, const QuadratureSpec& spec) {
  family.require_in_domain(theta);
  return metric_quadrature(
      family, theta,
      [&](double x, double p) -> Mat {
        const double fp = f_prime(std::max(p, kDensityFloor));
        // d_a p = p d_a ln p
        const Vec dp = p * family.grad_log_density(x, theta);
        return p * fp * fp * dp * dp.transpose();
      },
      1.0, spec);
}

MetricTensor gaussian_nonstationary_metric(double sigma, const std::function<double(double)>& f_prime,
                                           Z22Prefactor prefactor, const QuadratureSpec& spec) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::OutOfDomain, "fisher_rao", "sigma must be positive");
  }
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  auto weight = [&](double z) {
    const double p = norm * std::exp(-z * z);
    if (p == 0.0) return 0.0;
    const double fp = f_prime(std::max(p, kDensityFloor));
    return p * p * p * fp * fp;
  };
  const Support line = Support::real_line(0.0, 1.0);
  const double i11 = integrate(
                         [&](double z) {
                           const double z2 = z * z;
                           return weight(z) * (1.0 - 4.0 * z2 + 4.0 * z2 * z2);
                         },
                         line, spec)
                         .value;
  const double i22 = integrate([&](double z) { return weight(z) * z * z; }, line, spec).value;
  const double c22 = prefactor == Z22Prefactor::derived ? 2.0 * std::sqrt(2.0) : 1.0 / std::sqrt(2.0);
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = std::sqrt(2.0) / sigma * i11;
  g(1, 1) = c22 / sigma * i22;
  Vec point(2);
  point << sigma, 0.0;
  return MetricTensor::make(point, g);
}

MetricTensor gaussian_metric_closed(const Vec& theta, double k) {
  if (theta.size() != 2 || !(theta[0] > 0.0)) {
    throw Error(ErrorKind::OutOfDomain, "fisher_rao", "Gaussian parameters must be (sigma > 0, mean)");
  }
  const double s2 = theta[0] * theta[0];
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = 2.0 * k * k / s2;
  g(1, 1) = k * k / s2;
  return MetricTensor::make(theta, g, k);
}

double euler_lagrange_residual(const std::function<double(double)>& F, const std::vector<double>& p_grid) {
  // With u = ln p, p F'(p) = dG/du and d/dp (p F') = G''(u) / p for G(u) = F(e^u).
  constexpr double h = 0.05;
  double worst = 0.0;
  for (double p : p_grid) {
    if (!(p > 0.0)) throw Error(ErrorKind::OutOfDomain, "fisher_rao", "grid points must be positive");
    const double u = std::log(p);
    auto G = [&](double du) { return F(std::exp(u + du)); };
    const double g2 = (-G(2 * h) + 16.0 * G(h) - 30.0 * G(0.0) + 16.0 * G(-h) - G(-2 * h)) / (12.0 * h * h);
    worst = std::max(worst, std::abs(g2 / p));
  }
  return worst;
}

std::vector<double> log_grid(double p_min, double p_max, int count) {
  if (!(p_min > 0.0) || !(p_max >= p_min) || count < 2) {
    throw Error(ErrorKind::InvalidInput, "fisher_rao", "log grid needs 0 < p_min <= p_max and count >= 2");
  }
  std::vector<double> grid(count);
  const double a = std::log(p_min);
  const double b = std::log(p_max);
  for (int i = 0; i < count; ++i) grid[i] = std::exp(a + (b - a) * i / (count - 1));
  grid.back() = p_max;
  return grid;
}

namespace {
void require_gaussian_point(const Vec& theta) {
  if (theta.size() != 2 || !(theta[0] > 0.0) || !std::isfinite(theta[0]) || !std::isfinite(theta[1])) {
    throw Error(ErrorKind::OutOfDomain, "fisher_rao", "Gaussian parameters must be (sigma > 0, mean)");
  }
}
}  // namespace

double gauss_geodesic_distance_paper(const Vec& theta1, const Vec& theta2) {
  require_gaussian_point(theta1);
  require_gaussian_point(theta2);
  const double norm = std::hypot(theta2[0] - theta1[0], theta2[1] - theta1[1]);
  return 2.0 * std::asinh(norm / (2.0 * std::sqrt(theta2[0] * theta1[0])));
}

double gauss_geodesic_distance_exact(const Vec& theta1, const Vec& theta2) {
  require_gaussian_point(theta1);
  require_gaussian_point(theta2);
  const double ds = theta2[0] - theta1[0];
  const double dm = theta2[1] - theta1[1];
  return std::sqrt(2.0) * std::acosh(1.0 + (ds * ds + 0.5 * dm * dm) / (2.0 * theta1[0] * theta2[0]));
}

}  // namespace qdist
