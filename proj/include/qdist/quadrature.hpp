#pragma once

#include <complex>
#include <functional>
#include <type_traits>

#include <Eigen/Dense>

namespace qdist {

/// Support of a random variable or of an integrand.
///
/// For the real line, `center` and `scale` describe where the integrand
/// lives; the adaptive scheme maps x = center + scale * t / (1 - t^2) and the
/// Gauss-Hermite scheme assumes an envelope exp(-((x - center) / scale)^2).
struct Support {
  enum class Kind { real_line, interval, periodic };

  Kind kind = Kind::real_line;
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  double scale = 1.0;

  static Support real_line(double center = 0.0, double scale = 1.0);
  static Support interval(double lo, double hi);
  // One period [lo, lo + period).
  static Support periodic(double lo, double period);
};

enum class QuadratureScheme { adaptive_interval, gauss_hermite, periodic_trapezoid };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::adaptive_interval;
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  int node_count = 200;

  // Throws InvalidInput when a tolerance or count is out of range.
  void validate() const;

  static QuadratureSpec adaptive(double abs_tol = 1e-10, double rel_tol = 1e-9);
  static QuadratureSpec gauss_hermite(int nodes = 200);
  static QuadratureSpec periodic_trapezoid();
};

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0.0;
  int evaluations = 0;
};

namespace detail {
QuadResult<double> integrate_real(const std::function<double(double)>& f, const Support& support,
                                  const QuadratureSpec& spec);
QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, const Support& support,
    const QuadratureSpec& spec);
QuadResult<Eigen::VectorXcd> integrate_vector(const std::function<Eigen::VectorXcd(double)>& f,
                                              const Support& support, const QuadratureSpec& spec);

template <class>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;
}  // namespace detail

/// Integrates f over the support using the scheme in `spec`.
///
/// The integrand may return double, std::complex<double> or Eigen::VectorXcd;
/// vector integrands share one adaptive partition across components, and
/// their error is measured in the max norm. Throws Error{NonConvergent} when
/// the error bound max(abs_tol, rel_tol * |value|) cannot be reached within
/// the subdivision budget, Error{DomainMismatch} when the scheme cannot
/// handle the support, and Error{QuadratureFailure} on non-finite samples.
template <class F>
auto integrate(F&& f, const Support& support, const QuadratureSpec& spec) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  if constexpr (detail::is_complex_v<R>) {
    return detail::integrate_complex(std::function<std::complex<double>(double)>(f), support, spec);
  } else if constexpr (std::is_arithmetic_v<R>) {
    return detail::integrate_real(std::function<double(double)>(f), support, spec);
  } else {
    return detail::integrate_vector(std::function<Eigen::VectorXcd(double)>(f), support, spec);
  }
}

}  // namespace qdist
