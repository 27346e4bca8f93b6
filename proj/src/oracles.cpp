#include "qdist/oracles.hpp"

#include <cmath>
#include <numbers>

#include "qdist/error.hpp"

namespace qdist {

SphereMetric sphere_metric_finite_difference(const EvolvedBasis& basis, const AmplitudeState& state,
                                             const QuadratureSpec& spec, double h) {
  const int N = state.size();
  const int D = 2 * N;
  Eigen::VectorXd z0(D);
  z0 << state.coeffs.real(), state.coeffs.imag();

  auto integrand = [&](double x) -> CVec {
    const CVec a = basis.amplitudes(state.labels, x);
    auto log_p = [&](const Eigen::VectorXd& z) {
      CVec c(N);
      c.real() = z.head(N);
      c.imag() = z.tail(N);
      return std::log(std::norm(c.dot(a.conjugate())));
    };
    const double P = std::norm(state.coeffs.dot(a.conjugate()));
    CVec out = CVec::Zero(2 * N * N);
    if (!(P > 0.0)) return out;
    Mat H(D, D);
    for (int i = 0; i < D; ++i) {
      for (int j = i; j < D; ++j) {
        Eigen::VectorXd pp = z0, pm = z0, mp = z0, mm = z0;
        pp[i] += h, pp[j] += h;
        pm[i] += h, pm[j] -= h;
        mp[i] -= h, mp[j] += h;
        mm[i] -= h, mm[j] -= h;
        H(i, j) = H(j, i) = (log_p(pp) - log_p(pm) - log_p(mp) + log_p(mm)) / (4.0 * h * h);
      }
    }
    const cplx I(0.0, 1.0);
    for (int m = 0; m < N; ++m) {
      for (int n = 0; n < N; ++n) {
        const double aa = H(m, n);
        const double ab = H(m, N + n);
        const double ba = H(N + m, n);
        const double bb = H(N + m, N + n);
        out[m * N + n] = -P * 0.25 * (aa - I * ab - I * ba - bb);
        out[N * N + m * N + n] = -P * 0.25 * (aa - I * ab + I * ba + bb);
      }
    }
    return out;
  };
  const QuadResult<CVec> r = integrate(integrand, basis.support(state.labels, spec.scheme), spec);
  SphereMetric out;
  out.mode = SphereMode::full;
  out.labels = state.labels;
  out.g = CMatrix(N, N);
  out.g_bar = CMatrix(N, N);
  for (int m = 0; m < N; ++m) {
    for (int n = 0; n < N; ++n) {
      out.g(m, n) = r.value[m * N + n];
      out.g_bar(m, n) = r.value[N * N + m * N + n];
    }
  }
  out.abs_error = r.abs_error;
  return out;
}

cplx propagated_eigenstate(const EvolvedBasis& basis, int n, double x, const QuadratureSpec& spec) {
  if (basis.system != SphereSystem::harmonic_oscillator) {
    throw Error(ErrorKind::DomainMismatch, "hilbert_sphere", "the kernel oracle is for the oscillator");
  }
  const double wt = basis.omega * basis.t;
  const double s = std::sin(wt);
  if (std::abs(s) < 1e-6) throw Error(ErrorKind::PropagatorCaustic, "hilbert_sphere", "kernel is singular at sin(omega t) = 0");
  const double lam = basis.lambda();
  const double l2 = lam * lam;
  const double cot = std::cos(wt) / s;
  const cplx I(0.0, 1.0);
  const cplx pref = lam / std::sqrt(2.0 * std::numbers::pi * I * s);
  // Stationary basis at t = 0 supplies psi_n(y).
  EvolvedBasis still = basis;
  still.t = 0.0;
  auto f = [&](double y) -> cplx {
    const double psi = still.amplitudes({n}, y)[0].real();
    return pref * std::exp(I * (0.5 * l2 * (x * x + y * y) * cot - l2 * x * y / s)) * psi;
  };
  QuadratureSpec q = spec;
  q.scheme = QuadratureScheme::adaptive_interval;
  return integrate(f, basis.support({n}, QuadratureScheme::adaptive_interval), q).value;
}

cplx propagated_overlap(const EvolvedBasis& basis, int k, int l, double x, const QuadratureSpec& spec) {
  return std::conj(propagated_eigenstate(basis, k, x, spec)) * propagated_eigenstate(basis, l, x, spec);
}

double poincare_distance(const Vec& theta1, const Vec& theta2) {
  if (theta1.size() != 2 || theta2.size() != 2 || !(theta1[0] > 0.0) || !(theta2[0] > 0.0)) {
    throw Error(ErrorKind::OutOfDomain, "geodesy", "half-plane points need theta_1 > 0");
  }
  return std::acosh(1.0 + (theta2 - theta1).squaredNorm() / (2.0 * theta1[0] * theta2[0]));
}

}  // namespace qdist
