#include "qdist/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdist/error.hpp"
#include "qdist/hermite.hpp"

namespace qdist {

bool ParamBound::contains(double v) const {
  if (!std::isfinite(v)) return false;
  const bool above = lo_open ? v > lo : v >= lo;
  const bool below = hi_open ? v < hi : v <= hi;
  return above && below;
}

bool ParametricFamily::in_domain(const Vec& theta) const {
  if (theta.size() != dim_params) return false;
  for (int a = 0; a < dim_params; ++a) {
    if (!param_domain[a].contains(theta[a])) return false;
  }
  return true;
}

void ParametricFamily::require_in_domain(const Vec& theta) const {
  if (theta.size() != dim_params) {
    std::ostringstream os;
    os << name << " expects " << dim_params << " parameters, got " << theta.size();
    throw Error(ErrorKind::DimensionMismatch, "dist_core", os.str());
  }
  for (int a = 0; a < dim_params; ++a) {
    if (!param_domain[a].contains(theta[a])) {
      std::ostringstream os;
      os << name << ": parameter " << param_names[a] << " = " << theta[a]
         << " is outside the parameter domain";
      throw Error(ErrorKind::OutOfDomain, "dist_core", os.str());
    }
  }
}

Mat ParametricFamily::hessian(double x, const Vec& theta) const {
  if (hessian_log_density) return hessian_log_density(x, theta);
  Mat h(dim_params, dim_params);
  for (int b = 0; b < dim_params; ++b) {
    const double step = 1e-5 * std::max(1.0, std::abs(theta[b]));
    Vec plus = theta;
    Vec minus = theta;
    plus[b] += step;
    minus[b] -= step;
    h.col(b) = (grad_log_density(x, plus) - grad_log_density(x, minus)) / (2.0 * step);
  }
  return 0.5 * (h + h.transpose());
}

ParametricFamily gaussian_family() {
  ParametricFamily f;
  f.name = "gauss";
  f.dim_params = 2;
  f.param_names = {"sigma", "mean"};
  f.param_domain = {ParamBound{0.0, std::numeric_limits<double>::infinity(), true, true}, ParamBound{}};
  f.support = [](const Vec& th) { return Support::real_line(th[1], th[0]); };
  f.log_density = [](double x, const Vec& th) {
    const double z = (x - th[1]) / th[0];
    return -std::log(std::sqrt(2.0 * std::numbers::pi) * th[0]) - 0.5 * z * z;
  };
  f.grad_log_density = [](double x, const Vec& th) {
    const double s = th[0];
    const double d = x - th[1];
    Vec g(2);
    g << -1.0 / s + d * d / (s * s * s), d / (s * s);
    return g;
  };
  f.hessian_log_density = [](double x, const Vec& th) {
    const double s = th[0];
    const double d = x - th[1];
    const double s2 = s * s;
    Mat h(2, 2);
    h(0, 0) = 1.0 / s2 - 3.0 * d * d / (s2 * s2);
    h(0, 1) = h(1, 0) = -2.0 * d / (s2 * s);
    h(1, 1) = -1.0 / s2;
    return h;
  };
  return f;
}

namespace {

// Derivatives of lambda = sqrt(m omega / hbar) with respect to (m, omega).
struct LambdaJet {
  double lambda;
  Vec grad;
  Mat hess;
};

LambdaJet lambda_jet(const Vec& th, double hbar) {
  const double m = th[0];
  const double w = th[1];
  const double lam = std::sqrt(m * w / hbar);
  LambdaJet j{lam, Vec(2), Mat(2, 2)};
  j.grad << lam / (2.0 * m), lam / (2.0 * w);
  j.hess(0, 0) = -lam / (4.0 * m * m);
  j.hess(1, 1) = -lam / (4.0 * w * w);
  j.hess(0, 1) = j.hess(1, 0) = lam / (4.0 * m * w);
  return j;
}

}  // namespace

ParametricFamily ho_eigenstate_family(int n, const Constants& constants, int n_max) {
  if (n < 0) throw Error(ErrorKind::OutOfDomain, "dist_core", "eigenstate index must be >= 0");
  if (n > n_max) {
    std::ostringstream os;
    os << "eigenstate index " << n << " exceeds the configured limit " << n_max;
    throw Error(ErrorKind::IndexTooLarge, "dist_core", os.str());
  }
  const double hbar = constants.hbar;
  // -ln(2^n n! sqrt(pi))
  const double log_norm = -(n * std::numbers::ln2 + std::lgamma(n + 1.0) + 0.5 * std::log(std::numbers::pi));

  ParametricFamily f;
  f.name = "ho:" + std::to_string(n);
  f.dim_params = 2;
  f.param_names = {"m", "omega"};
  const ParamBound positive{0.0, std::numeric_limits<double>::infinity(), true, true};
  f.param_domain = {positive, positive};
  f.support = [n, hbar](const Vec& th) {
    const double lam = std::sqrt(th[0] * th[1] / hbar);
    return Support::real_line(0.0, std::sqrt(2.0 * n + 1.0) / lam);
  };
  f.log_density = [n, hbar, log_norm](double x, const Vec& th) {
    const double lam = std::sqrt(th[0] * th[1] / hbar);
    const double u = lam * x;
    // exp(-u^2) H_n(u)^2 underflows long before this for every supported n.
    if (std::abs(u) > 40.0) return -std::numeric_limits<double>::infinity();
    const double h = hermite_h(n, u);
    return log_norm + std::log(lam) - u * u + 2.0 * std::log(std::abs(h));
  };
  // L(lambda) = ln p; chain rule through lambda(m, omega).
  f.grad_log_density = [n, hbar](double x, const Vec& th) {
    const LambdaJet j = lambda_jet(th, hbar);
    const double u = j.lambda * x;
    const std::vector<double> h = hermite_h_values(n, u);
    const double dh = n > 0 ? 2.0 * n * h[n - 1] : 0.0;
    const double dl = 1.0 / j.lambda - 2.0 * j.lambda * x * x + 2.0 * x * dh / h[n];
    return Vec(dl * j.grad);
  };
  f.hessian_log_density = [n, hbar](double x, const Vec& th) {
    const LambdaJet j = lambda_jet(th, hbar);
    const double u = j.lambda * x;
    const std::vector<double> h = hermite_h_values(n, u);
    const double dh = n > 0 ? 2.0 * n * h[n - 1] : 0.0;
    const double ddh = n > 1 ? 4.0 * n * (n - 1.0) * h[n - 2] : 0.0;
    const double r1 = dh / h[n];
    const double dl = 1.0 / j.lambda - 2.0 * j.lambda * x * x + 2.0 * x * r1;
    const double ddl = -1.0 / (j.lambda * j.lambda) - 2.0 * x * x + 2.0 * x * x * (ddh / h[n] - r1 * r1);
    return Mat(ddl * j.grad * j.grad.transpose() + dl * j.hess);
  };
  return f;
}

double ho_density_half_exponent(int n, double x, double m, double omega, const Constants& constants) {
  const double lam = std::sqrt(m * omega / constants.hbar);
  const double u = lam * x;
  const double h = hermite_h(n, u);
  const double norm = std::exp(-(n * std::numbers::ln2 + std::lgamma(n + 1.0)));
  return norm * lam / std::sqrt(std::numbers::pi) * std::exp(-0.5 * u * u) * h * h;
}

QuadResult<double> total_probability(const ParametricFamily& family, const Vec& theta,
                                     const QuadratureSpec& spec) {
  family.require_in_domain(theta);
  return integrate([&](double x) { return family.density(x, theta); }, family.support(theta), spec);
}

}  // namespace qdist
