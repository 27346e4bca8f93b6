#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdist/constants.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Open/closed box constraint on one parameter.
struct ParamBound {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  bool contains(double v) const;
};

/// A parametric density p(x; theta) over a continuous support.
///
/// Evaluators are pure and may be called concurrently. `hessian_log_density`
/// is optional; when empty, callers fall back to central differences of the
/// gradient.
struct ParametricFamily {
  std::string name;
  int dim_params = 0;
  std::vector<std::string> param_names;
  std::vector<ParamBound> param_domain;
  // Integration support, including center/scale hints, at a parameter point.
  std::function<Support(const Vec&)> support;
  std::function<double(double, const Vec&)> log_density;
  std::function<Vec(double, const Vec&)> grad_log_density;
  std::function<Mat(double, const Vec&)> hessian_log_density;

  bool in_domain(const Vec& theta) const;
  // Throws OutOfDomain with the offending parameter named.
  void require_in_domain(const Vec& theta) const;
  double density(double x, const Vec& theta) const { return std::exp(log_density(x, theta)); }
  // Analytic Hessian when available, otherwise central differences of the gradient.
  Mat hessian(double x, const Vec& theta) const;
};

/// Two-parameter Gaussian with theta = (sigma, mean), sigma > 0.
ParametricFamily gaussian_family();

/// Position density of the n-th oscillator eigenstate over theta = (m, omega),
///   p_n(x) = lambda / (2^n n! sqrt(pi)) exp(-lambda^2 x^2) H_n(lambda x)^2,
/// with lambda^2 = m omega / hbar. Throws IndexTooLarge for n > n_max.
ParametricFamily ho_eigenstate_family(int n, const Constants& constants = {}, int n_max = 30);

/// Density of the oscillator eigenstate with the alternative exponent
/// exp(-lambda^2 x^2 / 2) and the same prefactor; it does not integrate to one.
double ho_density_half_exponent(int n, double x, double m, double omega, const Constants& constants = {});

/// Integral of p over its support at theta.
QuadResult<double> total_probability(const ParametricFamily& family, const Vec& theta,
                                     const QuadratureSpec& spec = {});

}  // namespace qdist
