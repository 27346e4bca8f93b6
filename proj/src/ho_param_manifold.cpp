#include "qdist/ho_param_manifold.hpp"

#include <cmath>
#include <sstream>

#include "qdist/error.hpp"

namespace qdist {

namespace {

void require_index(int n) {
  if (n < 0) throw Error(ErrorKind::OutOfDomain, "ho_param_manifold", "eigenstate index must be >= 0");
  // Keeps the products in eta_formula well inside 64 bits.
  if (n > 1000) throw Error(ErrorKind::IndexTooLarge, "ho_param_manifold", "eigenstate index too large");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw Error(ErrorKind::OutOfDomain, "ho_param_manifold", os.str());
  }
}

double half_ratio(int n) { return to_double(coeff_b(n) / (Rational(2) * coeff_a(n))); }

}  // namespace

Rational coeff_a(int n) {
  require_index(n);
  const long long k = n;
  return Rational(1 - k * k - k, 2);
}

Rational coeff_b(int n) {
  require_index(n);
  const long long k = n;
  return Rational(1 - k * k + 3 * k, 2);
}

Rational eta_formula(int n) {
  require_index(n);
  const long long k = n;
  const long long den = 1 - k * k - k;
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "ho_param_manifold", "1 - n^2 - n vanishes");
  return Rational((1 - k * k - 5 * k) * (3 - 3 * k * k + k), 8 * den);
}

Rational eta_completed_square(int n) {
  const Rational a = coeff_a(n);
  if (a.numerator() == 0) throw Error(ErrorKind::DivisionByZero, "ho_param_manifold", "a vanishes");
  const Rational b = coeff_b(n);
  return a - b * b / (Rational(4) * a);
}

Rational eta(int n) {
  const Rational e = eta_formula(n);
  if (e != eta_completed_square(n)) {
    throw Error(ErrorKind::InvalidInput, "ho_param_manifold", "eta identity failed");
  }
  return e;
}

ReferenceScales ReferenceScales::planck(const Constants& constants) {
  return ReferenceScales{1.0, constants.c * constants.c * constants.c / constants.G};
}

double planck_length(const Constants& constants) {
  return std::sqrt(constants.hbar * constants.G / (constants.c * constants.c * constants.c));
}

OscillatorMetric OscillatorMetric::make(int n, const ReferenceScales& scales) {
  require_positive(scales.m0, "m0");
  require_positive(scales.omega0, "omega0");
  return OscillatorMetric{n, coeff_a(n), coeff_b(n), qdist::eta(n), scales};
}

MetricTensor ho_metric_closed(int n, double m, double omega) {
  require_positive(m, "m");
  require_positive(omega, "omega");
  const double a = to_double(coeff_a(n));
  const double b = to_double(coeff_b(n));
  Mat g(2, 2);
  g(0, 0) = a / (m * m);
  g(1, 1) = a / (omega * omega);
  g(0, 1) = g(1, 0) = b / (2.0 * m * omega);
  Vec point(2);
  point << m, omega;
  return MetricTensor::make(point, g);
}

Vec uv_transform(int n, double m, double omega, const ReferenceScales& scales) {
  require_positive(m, "m");
  require_positive(omega, "omega");
  require_positive(scales.m0, "m0");
  require_positive(scales.omega0, "omega0");
  const double V = std::log(m / scales.m0);
  Vec uv(2);
  uv << std::log(omega / scales.omega0) + half_ratio(n) * V, V;
  return uv;
}

Vec uv_inverse(int n, double U, double V, const ReferenceScales& scales) {
  require_positive(scales.m0, "m0");
  require_positive(scales.omega0, "omega0");
  Vec mw(2);
  mw << scales.m0 * std::exp(V), scales.omega0 * std::exp(U - half_ratio(n) * V);
  return mw;
}

Mat uv_jacobian(int n, double m, double omega) {
  require_positive(m, "m");
  require_positive(omega, "omega");
  Mat J(2, 2);
  J << 0.0, m, omega, -half_ratio(n) * omega;
  return J;
}

std::string to_string(ManifoldSignature s) {
  switch (s) {
    case ManifoldSignature::riemannian: return "riemannian";
    case ManifoldSignature::lorentzian: return "lorentzian";
    case ManifoldSignature::negative_definite: return "negative-definite";
    case ManifoldSignature::degenerate: return "degenerate";
  }
  return "unknown";
}

ManifoldSignature classify_signature(const Rational& a, const Rational& eta) {
  if (a.numerator() == 0 || eta.numerator() == 0) return ManifoldSignature::degenerate;
  if (a.numerator() > 0 && eta.numerator() > 0) return ManifoldSignature::riemannian;
  if (a.numerator() < 0 && eta.numerator() < 0) return ManifoldSignature::negative_definite;
  return ManifoldSignature::lorentzian;
}

std::vector<SignatureRow> signature_report(int n_max) {
  if (n_max < 0) throw Error(ErrorKind::OutOfDomain, "ho_param_manifold", "n_max must be >= 0");
  std::vector<SignatureRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    SignatureRow row{n, coeff_a(n), eta(n)};
    row.signature = classify_signature(row.a, row.eta);
    rows.push_back(row);
  }
  return rows;
}

IndefiniteLength ho_distance(int n, const Vec& m_omega_1, const Vec& m_omega_2, const ReferenceScales& scales) {
  if (m_omega_1.size() != 2 || m_omega_2.size() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "ho_param_manifold", "points are (m, omega)");
  }
  const Vec d = uv_transform(n, m_omega_2[0], m_omega_2[1], scales) -
                uv_transform(n, m_omega_1[0], m_omega_1[1], scales);
  const double q = to_double(coeff_a(n)) * d[0] * d[0] + to_double(eta(n)) * d[1] * d[1];
  IndefiniteLength out;
  out.length = std::sqrt(std::abs(q));
  out.min_norm = out.max_norm = q;
  if (q > 1e-10) {
    out.causal_class = CausalClass::spacelike;
  } else if (q < -1e-10) {
    out.causal_class = CausalClass::timelike;
  } else {
    out.causal_class = CausalClass::null;
  }
  return out;
}

MetricField ho_metric_field(int n) {
  const double a = to_double(coeff_a(n));
  const double b = to_double(coeff_b(n));
  MetricField f;
  f.dim = 2;
  f.eval = [a, b](const Vec& th) {
    Mat g(2, 2);
    g(0, 0) = a / (th[0] * th[0]);
    g(1, 1) = a / (th[1] * th[1]);
    g(0, 1) = g(1, 0) = b / (2.0 * th[0] * th[1]);
    return g;
  };
  f.in_domain = [](const Vec& th) { return th[0] > 0.0 && th[1] > 0.0; };
  return f;
}

MetricField ho_uv_field(int n) {
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = to_double(coeff_a(n));
  g(1, 1) = to_double(eta(n));
  return constant_metric(g);
}

}  // namespace qdist
