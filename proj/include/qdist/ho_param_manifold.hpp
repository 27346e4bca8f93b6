#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "qdist/constants.hpp"
#include "qdist/fisher_rao.hpp"
#include "qdist/geodesy.hpp"

namespace qdist {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

/// a = (1 - n^2 - n) / 2
Rational coeff_a(int n);
/// b = (1 - n^2 + 3n) / 2
Rational coeff_b(int n);
/// (1/8)(1 - n^2 - 5n)(3 - 3n^2 + n) / (1 - n^2 - n). Throws DivisionByZero if the denominator vanishes.
Rational eta_formula(int n);
/// a - b^2 / (4a), the second diagonal entry after completing the square.
Rational eta_completed_square(int n);
/// eta_formula(n), checked against eta_completed_square(n).
Rational eta(int n);

/// Reference point (m0, omega0) of the logarithmic coordinates.
struct ReferenceScales {
  double m0 = 1.0;
  double omega0 = 1.0;

  /// m0 omega0 = c^3 / G with m0 = 1.
  static ReferenceScales planck(const Constants& constants = {});
};

/// sqrt(hbar G / c^3)
double planck_length(const Constants& constants = {});

struct OscillatorMetric {
  int n = 0;
  Rational a;
  Rational b;
  Rational eta;
  ReferenceScales scales;

  static OscillatorMetric make(int n, const ReferenceScales& scales = {});
};

/// [[a/m^2, b/(2 m omega)], [b/(2 m omega), a/omega^2]] over (m, omega).
MetricTensor ho_metric_closed(int n, double m, double omega);

/// U = ln[(omega/omega0)(m/m0)^(b/(2a))], V = ln(m/m0).
Vec uv_transform(int n, double m, double omega, const ReferenceScales& scales = {});
/// Inverse of uv_transform, returns (m, omega).
Vec uv_inverse(int n, double U, double V, const ReferenceScales& scales = {});
/// d(m, omega) / d(U, V) at (m, omega).
Mat uv_jacobian(int n, double m, double omega);

enum class ManifoldSignature { riemannian, lorentzian, negative_definite, degenerate };
std::string to_string(ManifoldSignature s);
ManifoldSignature classify_signature(const Rational& a, const Rational& eta);

struct SignatureRow {
  int n = 0;
  Rational a;
  Rational eta;
  ManifoldSignature signature = ManifoldSignature::riemannian;
};

std::vector<SignatureRow> signature_report(int n_max);

/// sqrt|a dU^2 + eta dV^2| between two oscillators, with its causal class.
IndefiniteLength ho_distance(int n, const Vec& m_omega_1, const Vec& m_omega_2, const ReferenceScales& scales = {});

/// The closed metric as a field over (m, omega) for the geodesic solver.
MetricField ho_metric_field(int n);
/// The constant metric diag(a, eta) over (U, V).
MetricField ho_uv_field(int n);

}  // namespace qdist
