#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdist/constants.hpp"
#include "qdist/families.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Truncated amplitude vector c_n over the listed basis labels.
struct AmplitudeState {
  CVec coeffs;
  std::vector<int> labels;

  /// Labels default to 0..N-1. Throws InvalidState unless sum |c|^2 = 1 to
  /// `tol` and labels are distinct.
  static AmplitudeState make(const CVec& coeffs, std::vector<int> labels = {}, double tol = 1e-12);
  int size() const { return static_cast<int>(coeffs.size()); }
};

enum class SphereSystem { free_particle_circle, harmonic_oscillator };
std::string to_string(SphereSystem s);

/// Energy-eigenbasis evolution for one of the two systems.
///
/// Overlap densities factor as I_kl(x) = conj(a_k(x)) a_l(x) with
///   oscillator:  a_n = exp(-i E_n t / hbar) psi_n(x), E_n = hbar omega (n + 1/2),
///   free circle: a_k = exp(-i k x + i hbar t k^2 / (2m)) / sqrt(2 pi), x in [0, 2 pi),
/// the latter reproducing I_kl = exp[i x (k - l) - i (hbar t / 2m)(k^2 - l^2)] / (2 pi).
struct EvolvedBasis {
  SphereSystem system = SphereSystem::harmonic_oscillator;
  double mass = 1.0;
  double omega = 1.0;
  double t = 0.0;
  Constants constants;
  int max_index = 64;

  static EvolvedBasis oscillator(double mass, double omega, double t, const Constants& constants = {});
  static EvolvedBasis free_particle(double mass, double t, const Constants& constants = {});

  /// sqrt(m omega / hbar); oscillator only.
  double lambda() const;
  /// a_k(x) for each label. Throws IndexTooLarge.
  CVec amplitudes(const std::vector<int>& labels, double x) const;
  /// Integration support for the labels under the given scheme.
  Support support(const std::vector<int>& labels, QuadratureScheme scheme) const;
  /// Adaptive rule for the oscillator, periodic trapezoid for the circle.
  QuadratureSpec default_spec() const;
  void require_labels(const std::vector<int>& labels) const;
};

/// I_kl(x, t).
cplx overlap_density(const EvolvedBasis& basis, int k, int l, double x);

/// sum c*_m c_n I_mn(x), all cross terms included.
double probability(const EvolvedBasis& basis, const AmplitudeState& state, double x);
/// Same sum for coefficients that need not be normalized.
double probability(const EvolvedBasis& basis, const CVec& coeffs, const std::vector<int>& labels, double x);

/// Propagated integral
///   I_n(x) = (lambda^2/pi)^(1/4) / sqrt(2^n n!) exp[-i lambda^2 x^2 e^(-i omega t) / (2 sin)]
///            * int H_n(lambda y) exp[i lambda^2 e^(i omega t) (y - x e^(-i omega t))^2 / (2 sin)] dy,
/// sin = sin(omega t), evaluated by rotating the complex Gaussian onto the real
/// axis and applying Gauss-Hermite. Oscillator only; throws PropagatorCaustic
/// when |sin(omega t)| < 1e-6.
cplx diagonal_In(const EvolvedBasis& basis, int n, double x, int nodes = 64);
/// int |I_n|^2 dx; Gauss-Hermite in x unless `spec` says otherwise.
QuadResult<double> diagonal_In_norm(const EvolvedBasis& basis, int n, const QuadratureSpec& spec = QuadratureSpec::gauss_hermite(120));
/// lambda^2 / (2 pi sin(omega t)) sum |c_n|^2 |I_n(x)|^2.
double probability_paper_diagonal(const EvolvedBasis& basis, const AmplitudeState& state, double x);

/// Throws DegenerateState when P vanishes somewhere in the core region,
/// judged by min P / sum |c_n|^2 |a_n|^2 < 1e-10 after local refinement.
void require_nondegenerate(const EvolvedBasis& basis, const AmplitudeState& state);

/// A^{kp}_{mn} = int I_km I_pn / P dx for one index tuple (state positions, not labels).
QuadResult<cplx> a_integral(const EvolvedBasis& basis, const AmplitudeState& state, int k, int p, int m, int n,
                            const QuadratureSpec& spec);

/// All A^{kp}_{mn}, flattened as ((k N + p) N + m) N + n, from one shared partition.
struct ATensor {
  int n = 0;
  CVec values;
  double abs_error = 0.0;

  cplx operator()(int k, int p, int m, int nn) const { return values[((k * n + p) * n + m) * n + nn]; }
};
ATensor a_tensor(const EvolvedBasis& basis, const AmplitudeState& state, const QuadratureSpec& spec);

enum class SphereMode { full, paper_diagonal };
std::string to_string(SphereMode m);

/// Metric blocks on the truncated sphere. In full mode
///   g_mn = sum c*_k c*_p A^{kp}_{mn},   g_m-bar-n = -delta_mn + sum c_k c*_p A^{mp}_{kn}.
/// In paper_diagonal mode (oscillator only)
///   g_mn = -delta_mn (4 pi / lambda^2) sin(omega t) + 4 c_m c_n int |I_m|^2 |I_n|^2 / P_diag dx
/// and g_bar is left empty.
struct SphereMetric {
  SphereMode mode = SphereMode::full;
  std::vector<int> labels;
  CMatrix g;
  CMatrix g_bar;
  double abs_error = 0.0;

  bool has_g_bar() const { return g_bar.size() > 0; }
  /// g_mn dc_m dc_n + conj(g_mn) dc*_m dc*_n + g_m-bar-n dc*_m dc_n.
  cplx line_element(const CVec& dc) const;
};

SphereMetric sphere_metric(const EvolvedBasis& basis, const AmplitudeState& state, SphereMode mode,
                           const QuadratureSpec& spec);
/// Uses basis.default_spec().
SphereMetric sphere_metric(const EvolvedBasis& basis, const AmplitudeState& state, SphereMode mode = SphereMode::full);

/// Recomputes the metric with two extra empty modes appended.
struct TruncationReport {
  int n = 0;
  double common_block_change = 0.0;  // max |g(N+2) - g(N)| on the shared block
  double added_block_max = 0.0;      // max |g| over the new rows and columns
};
TruncationReport truncation_report(const EvolvedBasis& basis, const AmplitudeState& state,
                                   const QuadratureSpec& spec);

/// Removes the component of dc that leaves the unit sphere, so sum Re(c*_n dc_n) = 0.
CVec project_tangent(const AmplitudeState& state, const CVec& dc);

}  // namespace qdist
