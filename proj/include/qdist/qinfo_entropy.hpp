#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qdist/constants.hpp"
#include "qdist/families.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

using CMat = Eigen::MatrixXcd;

/// Hermitian, unit-trace, positive semidefinite matrix. The eigendecomposition is
/// computed once at construction; instances are immutable.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), trace (1e-12) and eigenvalues >= -1e-12;
  /// small negative eigenvalues are clamped to zero. Throws InvalidState.
  static DensityMatrix from_matrix(const CMat& matrix, double tol = 1e-12);
  static DensityMatrix diagonal(const Vec& probabilities);
  /// Builds V diag(p) V^dagger without re-validating the spectrum.
  static DensityMatrix from_spectrum(const Vec& probabilities, const CMat& eigenvectors);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMat& matrix() const { return matrix_; }
  const Vec& eigenvalues() const { return eigenvalues_; }
  const CMat& eigenvectors() const { return eigenvectors_; }

 private:
  DensityMatrix() = default;
  CMat matrix_;
  Vec eigenvalues_;
  CMat eigenvectors_;
};

/// -sum lambda ln lambda, in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr[rho ln rho - rho ln sigma]; +infinity when supp(rho) is not inside supp(sigma).
/// Identical matrices give exactly 0 and rounding never makes the result negative.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

struct RelEntropyParts {
  double entropy_sigma = 0.0;
  double entropy_rho = 0.0;
  double cross = 0.0;  // Tr[(sigma - rho) ln sigma]

  double total() const { return entropy_sigma - entropy_rho + cross; }
};

/// S[sigma] - S[rho] + Tr[(sigma - rho) ln sigma]. Throws SupportViolation.
RelEntropyParts relative_entropy_decomposed(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Thermal model: a Hamiltonian matrix, an explicit spectrum, or the free scalar field.
struct ThermalModel {
  enum class Kind { hamiltonian, spectrum, scalar_field };
  Kind kind = Kind::spectrum;
  CMat hamiltonian;
  Vec energies;
  double volume = 1.0;
  Constants constants;
  double beta = 1.0;

  static ThermalModel from_hamiltonian(const CMat& H, double beta);
  static ThermalModel from_spectrum(const Vec& energies, double beta);
  /// Free scalar field in volume V.
  static ThermalModel scalar_field(double volume, double beta, const Constants& constants = {});
};

/// hbar omega (n + 1/2) for n < levels.
Vec oscillator_spectrum(double hbar_omega, int levels);
/// Oscillator spectrum cut where exp(-beta (E_n - E_0)) < 1e-18 * Z.
Vec oscillator_spectrum(double hbar_omega, double beta);

/// Gibbs weights and thermodynamic functions of a discrete spectrum.
struct GibbsSpectrum {
  Vec energies;
  Vec probabilities;
  double log_z = 0.0;
  double energy = 0.0;       // E(beta)
  double entropy = 0.0;      // S[sigma_t; beta], nats
  double free_energy = 0.0;  // E - S / beta
};

/// Spectral form of exp(-beta H) / Z. Throws NonFiniteZ, OutOfDomain (beta <= 0).
GibbsSpectrum gibbs_spectrum(const ThermalModel& model);
/// exp(-beta H) / Z as a matrix (diagonal for spectrum models).
DensityMatrix gibbs_state(const ThermalModel& model);

/// beta Tr(rho H) - S[rho] - beta F(beta), F = E - S / beta.
double thermal_relative_entropy(const DensityMatrix& rho, const ThermalModel& model);

/// S[sigma_t; beta] - S[rho_t; b] + beta E(b) - beta E(beta) for two Gibbs states of one spectrum.
double two_thermal_relative_entropy(const Vec& energies, double b, double beta);

/// S_rel(rho_t || sigma_t) with rho_t = exp(-b h)/Z_rho and sigma_t = exp(-beta H)/Z, through Tr[rho ln rho - rho ln sigma].
double mixed_thermal_relative_entropy(const CMat& H, const CMat& h, double beta, double b);

/// S[sigma_t; beta] - S[rho_t; b] - beta Tr(sigma_t H) + beta Tr(rho_t H), with sigma read as sigma_t.
double mixed_thermal_relative_entropy_expanded(const CMat& H, const CMat& h, double beta, double b);

/// 4 pi^5 V k_B / (45 (hbar c)^3)
double scalar_field_coefficient(double volume, const Constants& constants = {});
/// 2^4 pi^5 k_B V / (45 (hbar c)^3 beta^3)
double scalar_field_entropy(double volume, double beta, const Constants& constants = {});
/// 4 pi 3! V pi^4 / (90 (hbar c)^3 beta^4), ground-state energy dropped.
double scalar_field_energy(double volume, double beta, const Constants& constants = {});
/// Inverse of scalar_field_energy.
double scalar_field_beta(double volume, double energy, const Constants& constants = {});
/// C / beta^3 [1 - 4 (beta/b)^3 + 3 (beta/b)^4].
double scalar_field_rel_entropy(double volume, double b, double beta, const Constants& constants = {});
/// A = 8 pi^5 V k_B / (15 (hbar c)^3) of dl^2 = A db^2 / b^5.
double scalar_field_metric_a(double volume, const Constants& constants = {});
/// (1/3) sqrt(8 k_B) [4 pi^5 V / (15 (hbar c)^3)]^(1/8) (E2^(3/8) - E1^(3/8)).
double scalar_field_distance(double e1, double e2, double volume, const Constants& constants = {});
/// int sqrt(dl^2) over [E1, E2] with dl^2 = (k_B/8) K^(1/4) E^(-5/4) dE^2.
QuadResult<double> scalar_field_distance_numeric(double e1, double e2, double volume,
                                                 const Constants& constants = {},
                                                 const QuadratureSpec& spec = {});

}  // namespace qdist
