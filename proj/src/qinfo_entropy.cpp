#include "qdist/qinfo_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qdist/error.hpp"

namespace qdist {

namespace {

constexpr const char* kModule = "qinfo_entropy";
// Eigenvalues at or below this count as outside the support.
constexpr double kSupportTol = 1e-13;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_hermitian(const CMat& m, double tol, ErrorKind kind, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(kind, kModule, std::string(what) + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) throw Error(kind, kModule, std::string(what) + " has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
    throw Error(kind, kModule, std::string(what) + " is not Hermitian");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw Error(ErrorKind::OutOfDomain, kModule, os.str());
  }
}

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << "dimensions differ: " << rho.dim() << " vs " << sigma.dim();
    throw Error(ErrorKind::DimensionMismatch, kModule, os.str());
  }
}

// <v_j| rho |v_j> for the eigenvectors v_j of sigma.
Vec diagonal_in_basis(const DensityMatrix& rho, const CMat& basis) {
  return (basis.adjoint() * rho.matrix() * basis).diagonal().real();
}

double hbar_c_cubed(const Constants& k) {
  const double hc = k.hbar * k.c;
  return hc * hc * hc;
}

// K = 4 pi^5 V / (15 (hbar c)^3), so E(beta) = K / beta^4.
double energy_coefficient(double volume, const Constants& constants) {
  require_positive(volume, "volume");
  return 4.0 * std::pow(std::numbers::pi, 5) * volume / (15.0 * hbar_c_cubed(constants));
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const CMat& matrix, double tol) {
  require_hermitian(matrix, tol, ErrorKind::InvalidState, "density matrix");
  const std::complex<double> tr = matrix.trace();
  if (std::abs(tr.real() - 1.0) > tol || std::abs(tr.imag()) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix trace is " << tr.real() << ", expected 1";
    throw Error(ErrorKind::InvalidState, kModule, os.str());
  }
  const CMat herm = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidState, kModule, "eigendecomposition failed");
  }
  Vec ev = solver.eigenvalues();
  for (double& e : ev) {
    if (e < -tol) {
      std::ostringstream os;
      os << "density matrix has negative eigenvalue " << e;
      throw Error(ErrorKind::InvalidState, kModule, os.str());
    }
    e = std::max(e, 0.0);
  }
  DensityMatrix d;
  d.matrix_ = herm;
  d.eigenvalues_ = ev;
  d.eigenvectors_ = solver.eigenvectors();
  return d;
}

DensityMatrix DensityMatrix::diagonal(const Vec& probabilities) {
  return from_matrix(probabilities.cast<std::complex<double>>().asDiagonal().toDenseMatrix());
}

DensityMatrix DensityMatrix::from_spectrum(const Vec& probabilities, const CMat& eigenvectors) {
  DensityMatrix d;
  d.eigenvalues_ = probabilities;
  d.eigenvectors_ = eigenvectors;
  d.matrix_ = eigenvectors * probabilities.cast<std::complex<double>>().asDiagonal() * eigenvectors.adjoint();
  d.matrix_ = 0.5 * (d.matrix_ + d.matrix_.adjoint());
  return d;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : rho.eigenvalues()) s -= xlogx(l);
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  if (rho.matrix() == sigma.matrix()) return 0.0;
  const Vec weights = diagonal_in_basis(rho, sigma.eigenvectors());
  double rho_log_sigma = 0.0;
  for (int j = 0; j < sigma.dim(); ++j) {
    const double mu = sigma.eigenvalues()[j];
    if (mu <= kSupportTol) {
      if (weights[j] > kSupportTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    rho_log_sigma += weights[j] * std::log(mu);
  }
  double rho_log_rho = 0.0;
  for (double l : rho.eigenvalues()) rho_log_rho += xlogx(l);
  // Klein's inequality; only rounding can push the sum below zero.
  return std::max(0.0, rho_log_rho - rho_log_sigma);
}

RelEntropyParts relative_entropy_decomposed(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const Vec weights = diagonal_in_basis(rho, sigma.eigenvectors());
  Vec log_mu(sigma.dim());
  for (int j = 0; j < sigma.dim(); ++j) {
    const double mu = sigma.eigenvalues()[j];
    if (mu <= kSupportTol) {
      if (weights[j] > kSupportTol) {
        throw Error(ErrorKind::SupportViolation, kModule, "support of rho is not contained in support of sigma");
      }
      // Both states vanish on this direction, so its logarithm never contributes.
      log_mu[j] = 0.0;
    } else {
      log_mu[j] = std::log(mu);
    }
  }
  const CMat& v = sigma.eigenvectors();
  const CMat log_sigma = v * log_mu.cast<std::complex<double>>().asDiagonal() * v.adjoint();
  RelEntropyParts parts;
  parts.entropy_sigma = von_neumann_entropy(sigma);
  parts.entropy_rho = von_neumann_entropy(rho);
  parts.cross = ((sigma.matrix() - rho.matrix()) * log_sigma).trace().real();
  return parts;
}

ThermalModel ThermalModel::from_hamiltonian(const CMat& H, double beta) {
  require_hermitian(H, 1e-12, ErrorKind::InvalidInput, "Hamiltonian");
  ThermalModel m;
  m.kind = Kind::hamiltonian;
  m.hamiltonian = 0.5 * (H + H.adjoint());
  m.beta = beta;
  return m;
}

ThermalModel ThermalModel::from_spectrum(const Vec& energies, double beta) {
  if (energies.size() == 0 || !energies.allFinite()) {
    throw Error(ErrorKind::InvalidInput, kModule, "spectrum must be non-empty and finite");
  }
  ThermalModel m;
  m.kind = Kind::spectrum;
  m.energies = energies;
  m.beta = beta;
  return m;
}

ThermalModel ThermalModel::scalar_field(double volume, double beta, const Constants& constants) {
  require_positive(volume, "volume");
  ThermalModel m;
  m.kind = Kind::scalar_field;
  m.volume = volume;
  m.beta = beta;
  m.constants = constants;
  return m;
}

Vec oscillator_spectrum(double hbar_omega, int levels) {
  require_positive(hbar_omega, "hbar omega");
  if (levels < 1) throw Error(ErrorKind::InvalidInput, kModule, "need at least one level");
  Vec e(levels);
  for (int n = 0; n < levels; ++n) e[n] = hbar_omega * (n + 0.5);
  return e;
}

Vec oscillator_spectrum(double hbar_omega, double beta) {
  require_positive(hbar_omega, "hbar omega");
  require_positive(beta, "beta");
  // Z >= 1 after shifting by E_0, so exp(-beta hbar omega n) < 1e-18 suffices.
  const double x = beta * hbar_omega;
  const double levels = std::ceil(std::log(1e18) / x) + 1.0;
  if (levels > 1e7) throw Error(ErrorKind::NonFiniteZ, kModule, "oscillator spectrum needs too many levels");
  return oscillator_spectrum(hbar_omega, static_cast<int>(levels));
}

GibbsSpectrum gibbs_spectrum(const ThermalModel& model) {
  require_positive(model.beta, "beta");
  GibbsSpectrum g;
  switch (model.kind) {
    case ThermalModel::Kind::hamiltonian: {
      Eigen::SelfAdjointEigenSolver<CMat> solver(model.hamiltonian, Eigen::EigenvaluesOnly);
      g.energies = solver.eigenvalues();
      break;
    }
    case ThermalModel::Kind::spectrum:
      g.energies = model.energies;
      break;
    case ThermalModel::Kind::scalar_field:
      throw Error(ErrorKind::DomainMismatch, kModule, "the scalar field has no discrete spectrum; use the scalar_field_* functions");
  }
  const double e_min = g.energies.minCoeff();
  Vec w = (-(model.beta) * (g.energies.array() - e_min)).exp();
  const double sum = w.sum();
  if (!std::isfinite(sum) || !(sum > 0.0)) throw Error(ErrorKind::NonFiniteZ, kModule, "partition function is not finite");
  g.probabilities = w / sum;
  g.log_z = std::log(sum) - model.beta * e_min;
  if (!std::isfinite(g.log_z)) throw Error(ErrorKind::NonFiniteZ, kModule, "partition function is not finite");
  g.energy = g.probabilities.dot(g.energies);
  g.entropy = 0.0;
  for (double p : g.probabilities) g.entropy -= xlogx(p);
  g.free_energy = g.energy - g.entropy / model.beta;
  return g;
}

DensityMatrix gibbs_state(const ThermalModel& model) {
  require_positive(model.beta, "beta");
  if (model.kind == ThermalModel::Kind::hamiltonian) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(model.hamiltonian);
    const GibbsSpectrum g = gibbs_spectrum(model);
    return DensityMatrix::from_spectrum(g.probabilities, solver.eigenvectors());
  }
  const GibbsSpectrum g = gibbs_spectrum(model);
  const int d = static_cast<int>(g.energies.size());
  return DensityMatrix::from_spectrum(g.probabilities, CMat::Identity(d, d));
}

double thermal_relative_entropy(const DensityMatrix& rho, const ThermalModel& model) {
  CMat H;
  if (model.kind == ThermalModel::Kind::hamiltonian) {
    H = model.hamiltonian;
  } else if (model.kind == ThermalModel::Kind::spectrum) {
    H = model.energies.cast<std::complex<double>>().asDiagonal();
  } else {
    throw Error(ErrorKind::DomainMismatch, kModule, "thermal shortcut needs a finite-dimensional model");
  }
  if (H.rows() != rho.dim()) {
    std::ostringstream os;
    os << "state has dimension " << rho.dim() << ", Hamiltonian " << H.rows();
    throw Error(ErrorKind::DimensionMismatch, kModule, os.str());
  }
  const GibbsSpectrum g = gibbs_spectrum(model);
  const double mean_energy = (rho.matrix() * H).trace().real();
  return model.beta * mean_energy - von_neumann_entropy(rho) - model.beta * g.free_energy;
}

double two_thermal_relative_entropy(const Vec& energies, double b, double beta) {
  const GibbsSpectrum rho = gibbs_spectrum(ThermalModel::from_spectrum(energies, b));
  const GibbsSpectrum sigma = gibbs_spectrum(ThermalModel::from_spectrum(energies, beta));
  return sigma.entropy - rho.entropy + beta * rho.energy - beta * sigma.energy;
}

double mixed_thermal_relative_entropy(const CMat& H, const CMat& h, double beta, double b) {
  const DensityMatrix rho = gibbs_state(ThermalModel::from_hamiltonian(h, b));
  const DensityMatrix sigma = gibbs_state(ThermalModel::from_hamiltonian(H, beta));
  return relative_entropy(rho, sigma);
}

double mixed_thermal_relative_entropy_expanded(const CMat& H, const CMat& h, double beta, double b) {
  if (H.rows() != h.rows()) throw Error(ErrorKind::DimensionMismatch, kModule, "Hamiltonians differ in dimension");
  const ThermalModel sigma_model = ThermalModel::from_hamiltonian(H, beta);
  const ThermalModel rho_model = ThermalModel::from_hamiltonian(h, b);
  const DensityMatrix sigma = gibbs_state(sigma_model);
  const DensityMatrix rho = gibbs_state(rho_model);
  const double s_sigma = gibbs_spectrum(sigma_model).entropy;
  const double s_rho = gibbs_spectrum(rho_model).entropy;
  return s_sigma - s_rho - beta * (sigma.matrix() * H).trace().real() + beta * (rho.matrix() * H).trace().real();
}

double scalar_field_coefficient(double volume, const Constants& constants) {
  require_positive(volume, "volume");
  return 4.0 * std::pow(std::numbers::pi, 5) * volume * constants.k_B / (45.0 * hbar_c_cubed(constants));
}

double scalar_field_entropy(double volume, double beta, const Constants& constants) {
  require_positive(beta, "beta");
  return 16.0 * std::pow(std::numbers::pi, 5) * constants.k_B * volume /
         (45.0 * hbar_c_cubed(constants) * beta * beta * beta);
}

double scalar_field_energy(double volume, double beta, const Constants& constants) {
  require_positive(volume, "volume");
  require_positive(beta, "beta");
  return 4.0 * std::numbers::pi * 6.0 * volume * std::pow(std::numbers::pi, 4) /
         (90.0 * hbar_c_cubed(constants) * std::pow(beta, 4));
}

double scalar_field_beta(double volume, double energy, const Constants& constants) {
  require_positive(energy, "energy");
  return std::pow(energy_coefficient(volume, constants) / energy, 0.25);
}

double scalar_field_rel_entropy(double volume, double b, double beta, const Constants& constants) {
  require_positive(b, "b");
  require_positive(beta, "beta");
  const double r = beta / b;
  const double r3 = r * r * r;
  return scalar_field_coefficient(volume, constants) / (beta * beta * beta) * (1.0 - 4.0 * r3 + 3.0 * r3 * r);
}

double scalar_field_metric_a(double volume, const Constants& constants) {
  require_positive(volume, "volume");
  return 8.0 * std::pow(std::numbers::pi, 5) * volume * constants.k_B / (15.0 * hbar_c_cubed(constants));
}

namespace {
void require_energies(double e1, double e2) {
  require_positive(e1, "E1");
  require_positive(e2, "E2");
  if (e2 < e1) throw Error(ErrorKind::OutOfDomain, kModule, "need E2 >= E1");
}
}  // namespace

double scalar_field_distance(double e1, double e2, double volume, const Constants& constants) {
  require_energies(e1, e2);
  return std::sqrt(8.0 * constants.k_B) / 3.0 * std::pow(energy_coefficient(volume, constants), 0.125) *
         (std::pow(e2, 0.375) - std::pow(e1, 0.375));
}

QuadResult<double> scalar_field_distance_numeric(double e1, double e2, double volume, const Constants& constants,
                                                 const QuadratureSpec& spec) {
  require_energies(e1, e2);
  const double pref = constants.k_B / 8.0 * std::pow(energy_coefficient(volume, constants), 0.25);
  if (e1 == e2) return {};
  QuadratureSpec s = spec;
  s.scheme = QuadratureScheme::adaptive_interval;
  return integrate([pref](double e) { return std::sqrt(pref * std::pow(e, -1.25)); }, Support::interval(e1, e2), s);
}

}  // namespace qdist
