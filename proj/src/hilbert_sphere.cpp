#include "qdist/hilbert_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "qdist/error.hpp"
#include "qdist/hermite.hpp"

namespace qdist {

namespace {

constexpr const char* kModule = "hilbert_sphere";
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCausticTol = 1e-6;
constexpr double kDegenerateTol = 1e-10;
// Half-width of the oscillator integration window beyond the classical turning point, in lambda x units.
constexpr double kTailWidth = 10.0;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw Error(ErrorKind::OutOfDomain, kModule, os.str());
  }
}

int max_abs_label(const std::vector<int>& labels) {
  int m = 0;
  for (int l : labels) m = std::max(m, std::abs(l));
  return m;
}

void require_oscillator(const EvolvedBasis& basis, const char* what) {
  if (basis.system != SphereSystem::harmonic_oscillator) {
    throw Error(ErrorKind::DomainMismatch, kModule, std::string(what) + " is defined for the oscillator only");
  }
}

double sin_wt(const EvolvedBasis& basis) {
  const double s = std::sin(basis.omega * basis.t);
  if (std::abs(s) < kCausticTol) {
    std::ostringstream os;
    os << "sin(omega t) = " << s << " is at a propagator caustic";
    throw Error(ErrorKind::PropagatorCaustic, kModule, os.str());
  }
  return s;
}

// Position-space core region used by the degeneracy scan.
std::pair<double, double> core_region(const EvolvedBasis& basis, const std::vector<int>& labels) {
  if (basis.system == SphereSystem::free_particle_circle) return {0.0, kTwoPi};
  const double half = (std::sqrt(2.0 * max_abs_label(labels) + 1.0) + 3.0) / basis.lambda();
  return {-half, half};
}

}  // namespace

AmplitudeState AmplitudeState::make(const CVec& coeffs, std::vector<int> labels, double tol) {
  if (coeffs.size() == 0) throw Error(ErrorKind::InvalidState, kModule, "state has no coefficients");
  if (!coeffs.allFinite()) throw Error(ErrorKind::InvalidState, kModule, "state has non-finite coefficients");
  if (labels.empty()) {
    for (int i = 0; i < coeffs.size(); ++i) labels.push_back(i);
  }
  if (static_cast<int>(labels.size()) != coeffs.size()) {
    throw Error(ErrorKind::DimensionMismatch, kModule, "one label per coefficient is required");
  }
  if (std::set<int>(labels.begin(), labels.end()).size() != labels.size()) {
    throw Error(ErrorKind::InvalidState, kModule, "basis labels must be distinct");
  }
  const double norm = coeffs.squaredNorm();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "sum |c_n|^2 = " << norm << ", expected 1";
    throw Error(ErrorKind::InvalidState, kModule, os.str());
  }
  return AmplitudeState{coeffs, std::move(labels)};
}

std::string to_string(SphereSystem s) {
  return s == SphereSystem::free_particle_circle ? "free" : "ho";
}

std::string to_string(SphereMode m) { return m == SphereMode::full ? "eq4" : "paper-diagonal"; }

EvolvedBasis EvolvedBasis::oscillator(double mass, double omega, double t, const Constants& constants) {
  require_positive(mass, "m");
  require_positive(omega, "omega");
  if (!std::isfinite(t)) throw Error(ErrorKind::OutOfDomain, kModule, "t must be finite");
  EvolvedBasis b;
  b.system = SphereSystem::harmonic_oscillator;
  b.mass = mass;
  b.omega = omega;
  b.t = t;
  b.constants = constants;
  return b;
}

EvolvedBasis EvolvedBasis::free_particle(double mass, double t, const Constants& constants) {
  require_positive(mass, "m");
  if (!std::isfinite(t)) throw Error(ErrorKind::OutOfDomain, kModule, "t must be finite");
  EvolvedBasis b;
  b.system = SphereSystem::free_particle_circle;
  b.mass = mass;
  b.t = t;
  b.constants = constants;
  return b;
}

double EvolvedBasis::lambda() const { return std::sqrt(mass * omega / constants.hbar); }

void EvolvedBasis::require_labels(const std::vector<int>& labels) const {
  for (int l : labels) {
    if (system == SphereSystem::harmonic_oscillator && l < 0) {
      throw Error(ErrorKind::OutOfDomain, kModule, "oscillator labels must be >= 0");
    }
    if (std::abs(l) > max_index) {
      std::ostringstream os;
      os << "mode " << l << " exceeds the truncation limit " << max_index;
      throw Error(ErrorKind::IndexTooLarge, kModule, os.str());
    }
  }
}

CVec EvolvedBasis::amplitudes(const std::vector<int>& labels, double x) const {
  require_labels(labels);
  CVec a(labels.size());
  if (system == SphereSystem::harmonic_oscillator) {
    const double lam = lambda();
    const std::vector<double> phi = hermite_functions(max_abs_label(labels), lam * x);
    const double root = std::sqrt(lam);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const int n = labels[i];
      a[i] = std::polar(root * phi[n], -omega * t * (n + 0.5));
    }
  } else {
    const double tau = constants.hbar * t / (2.0 * mass);
    const double norm = 1.0 / std::sqrt(kTwoPi);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double k = labels[i];
      a[i] = std::polar(norm, -k * x + tau * k * k);
    }
  }
  return a;
}

Support EvolvedBasis::support(const std::vector<int>& labels, QuadratureScheme scheme) const {
  if (system == SphereSystem::free_particle_circle) {
    if (scheme == QuadratureScheme::gauss_hermite) {
      throw Error(ErrorKind::DomainMismatch, kModule, "Gauss-Hermite does not apply on the circle");
    }
    return scheme == QuadratureScheme::periodic_trapezoid ? Support::periodic(0.0, kTwoPi)
                                                          : Support::interval(0.0, kTwoPi);
  }
  const double lam = lambda();
  if (scheme == QuadratureScheme::gauss_hermite) return Support::real_line(0.0, 1.0 / lam);
  if (scheme == QuadratureScheme::periodic_trapezoid) {
    throw Error(ErrorKind::DomainMismatch, kModule, "the oscillator is not periodic in x");
  }
  const double half = (std::sqrt(2.0 * max_abs_label(labels) + 1.0) + kTailWidth) / lam;
  return Support::interval(-half, half);
}

QuadratureSpec EvolvedBasis::default_spec() const {
  QuadratureSpec s = system == SphereSystem::free_particle_circle ? QuadratureSpec::periodic_trapezoid()
                                                                  : QuadratureSpec::adaptive();
  s.abs_tol = 1e-12;
  s.rel_tol = 1e-11;
  return s;
}

cplx overlap_density(const EvolvedBasis& basis, int k, int l, double x) {
  const CVec a = basis.amplitudes({k, l}, x);
  return std::conj(a[0]) * a[1];
}

double probability(const EvolvedBasis& basis, const CVec& coeffs, const std::vector<int>& labels, double x) {
  if (static_cast<int>(labels.size()) != coeffs.size()) {
    throw Error(ErrorKind::DimensionMismatch, kModule, "one label per coefficient is required");
  }
  // sum c*_m c_n conj(a_m) a_n = |sum c_n a_n|^2
  return std::norm(coeffs.dot(basis.amplitudes(labels, x).conjugate()));
}

double probability(const EvolvedBasis& basis, const AmplitudeState& state, double x) {
  return probability(basis, state.coeffs, state.labels, x);
}

cplx diagonal_In(const EvolvedBasis& basis, int n, double x, int nodes) {
  require_oscillator(basis, "I_n");
  basis.require_labels({n});
  const double s = sin_wt(basis);
  const double lam = basis.lambda();
  const double l2 = lam * lam;
  const double wt = basis.omega * basis.t;
  const cplx i(0.0, 1.0);
  const cplx e_minus = std::polar(1.0, -wt);
  const cplx e_plus = std::polar(1.0, wt);
  // exponent alpha (y - y0)^2 with Re(alpha) = -lambda^2 / 2
  const cplx alpha = i * l2 * e_plus / (2.0 * s);
  const cplx y0 = x * e_minus;
  const cplx root = std::sqrt(-alpha);
  const GaussHermiteRule& rule = gauss_hermite_rule(std::max(nodes, n / 2 + 2));
  cplx sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const cplx u = lam * (y0 + rule.nodes[j] / root);
    // H_n at complex argument by recurrence
    cplx prev = 1.0;
    cplx cur = 2.0 * u;
    if (n == 0) cur = 1.0;
    for (int k = 1; k < n; ++k) {
      const cplx next = 2.0 * u * cur - 2.0 * static_cast<double>(k) * prev;
      prev = cur;
      cur = next;
    }
    sum += rule.weights[j] * cur;
  }
  const double log_norm = 0.25 * std::log(l2 / std::numbers::pi) - 0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0));
  const cplx envelope = std::exp(-i * l2 * x * x * e_minus / (2.0 * s));
  return std::exp(log_norm) * envelope * sum / root;
}

QuadResult<double> diagonal_In_norm(const EvolvedBasis& basis, int n, const QuadratureSpec& spec) {
  require_oscillator(basis, "I_n");
  sin_wt(basis);
  const Support support = basis.support({n}, spec.scheme);
  return integrate([&](double x) { return std::norm(diagonal_In(basis, n, x)); }, support, spec);
}

double probability_paper_diagonal(const EvolvedBasis& basis, const AmplitudeState& state, double x) {
  require_oscillator(basis, "the diagonal probability");
  const double s = sin_wt(basis);
  const double l2 = basis.lambda() * basis.lambda();
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) sum += std::norm(state.coeffs[i]) * std::norm(diagonal_In(basis, state.labels[i], x));
  return l2 / (kTwoPi * s) * sum;
}

void require_nondegenerate(const EvolvedBasis& basis, const AmplitudeState& state) {
  auto ratio = [&](double x) {
    const CVec a = basis.amplitudes(state.labels, x);
    double incoherent = 0.0;
    for (int i = 0; i < state.size(); ++i) incoherent += std::norm(state.coeffs[i] * a[i]);
    if (!(incoherent > 0.0)) return 1.0;
    return std::norm(state.coeffs.dot(a.conjugate())) / incoherent;
  };
  const auto [lo, hi] = core_region(basis, state.labels);
  constexpr int samples = 4096;
  const double h = (hi - lo) / samples;
  int best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double r = ratio(lo + i * h);
    if (r < best_r) {
      best_r = r;
      best = i;
    }
  }
  if (best_r >= kDegenerateTol) {
    const double a = lo + std::max(best - 1, 0) * h;
    const double b = lo + std::min(best + 1, samples) * h;
    const auto refined = boost::math::tools::brent_find_minima(ratio, a, b, 52);
    best_r = std::min(best_r, refined.second);
  }
  if (best_r < kDegenerateTol) {
    std::ostringstream os;
    os << "P vanishes inside the support (min P / sum |c_n a_n|^2 = " << best_r
       << "); A-integrals are not integrable";
    throw Error(ErrorKind::DegenerateState, kModule, os.str());
  }
}

namespace {

void require_spec_for(const EvolvedBasis& basis, const QuadratureSpec& spec) {
  spec.validate();
  if (basis.system == SphereSystem::free_particle_circle && spec.scheme == QuadratureScheme::gauss_hermite) {
    throw Error(ErrorKind::DomainMismatch, kModule, "Gauss-Hermite does not apply on the circle");
  }
}

template <class F>
auto integrate_checked(F&& f, const Support& support, const QuadratureSpec& spec) {
  try {
    return integrate(std::forward<F>(f), support, spec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonConvergent) throw Error(ErrorKind::QuadratureFailure, kModule, e.what());
    throw;
  }
}

}  // namespace

QuadResult<cplx> a_integral(const EvolvedBasis& basis, const AmplitudeState& state, int k, int p, int m, int n,
                            const QuadratureSpec& spec) {
  const int N = state.size();
  for (int idx : {k, p, m, n}) {
    if (idx < 0 || idx >= N) throw Error(ErrorKind::IndexTooLarge, kModule, "A-integral index outside the state");
  }
  require_spec_for(basis, spec);
  require_nondegenerate(basis, state);
  auto f = [&](double x) -> cplx {
    const CVec a = basis.amplitudes(state.labels, x);
    const double P = std::norm(state.coeffs.dot(a.conjugate()));
    if (!(P > 0.0)) return 0.0;
    return std::conj(a[k]) * a[m] * std::conj(a[p]) * a[n] / P;
  };
  return integrate_checked(f, basis.support(state.labels, spec.scheme), spec);
}

ATensor a_tensor(const EvolvedBasis& basis, const AmplitudeState& state, const QuadratureSpec& spec) {
  require_spec_for(basis, spec);
  require_nondegenerate(basis, state);
  const int N = state.size();
  auto f = [&](double x) -> CVec {
    const CVec a = basis.amplitudes(state.labels, x);
    const double P = std::norm(state.coeffs.dot(a.conjugate()));
    CVec out = CVec::Zero(N * N * N * N);
    if (!(P > 0.0)) return out;
    // u(k, m) = I_km = conj(a_k) a_m
    const CMatrix u = a.conjugate() * a.transpose();
    int idx = 0;
    for (int k = 0; k < N; ++k) {
      for (int p = 0; p < N; ++p) {
        for (int m = 0; m < N; ++m) {
          for (int n = 0; n < N; ++n) out[idx++] = u(k, m) * u(p, n) / P;
        }
      }
    }
    return out;
  };
  const QuadResult<CVec> r = integrate_checked(f, basis.support(state.labels, spec.scheme), spec);
  return ATensor{N, r.value, r.abs_error};
}

cplx SphereMetric::line_element(const CVec& dc) const {
  if (dc.size() != g.rows()) throw Error(ErrorKind::DimensionMismatch, kModule, "tangent size differs from the metric");
  const cplx holo = (dc.transpose() * g * dc).value();
  cplx total = holo + std::conj(holo);
  if (has_g_bar()) total += (dc.adjoint() * g_bar * dc).value();
  return total;
}

SphereMetric sphere_metric(const EvolvedBasis& basis, const AmplitudeState& state, SphereMode mode,
                           const QuadratureSpec& spec) {
  const int N = state.size();
  SphereMetric out;
  out.mode = mode;
  out.labels = state.labels;
  const CVec& c = state.coeffs;
  if (mode == SphereMode::full) {
    const ATensor A = a_tensor(basis, state, spec);
    out.g = CMatrix::Zero(N, N);
    out.g_bar = CMatrix::Zero(N, N);
    for (int m = 0; m < N; ++m) {
      for (int n = 0; n < N; ++n) {
        cplx g = 0.0;
        cplx gb = m == n ? -1.0 : 0.0;
        for (int k = 0; k < N; ++k) {
          for (int p = 0; p < N; ++p) {
            g += std::conj(c[k]) * std::conj(c[p]) * A(k, p, m, n);
            gb += c[k] * std::conj(c[p]) * A(m, p, k, n);
          }
        }
        out.g(m, n) = g;
        out.g_bar(m, n) = gb;
      }
    }
    out.abs_error = A.abs_error * N * N;
    return out;
  }

  require_oscillator(basis, "paper-diagonal mode");
  require_spec_for(basis, spec);
  const double s = sin_wt(basis);
  const double l2 = basis.lambda() * basis.lambda();
  auto f = [&](double x) -> CVec {
    Eigen::VectorXd norms(N);
    for (int i = 0; i < N; ++i) norms[i] = std::norm(diagonal_In(basis, state.labels[i], x));
    double P = 0.0;
    for (int i = 0; i < N; ++i) P += std::norm(c[i]) * norms[i];
    P *= l2 / (kTwoPi * s);
    CVec v = CVec::Zero(N * N);
    if (P == 0.0) return v;
    for (int m = 0; m < N; ++m) {
      for (int n = 0; n < N; ++n) v[m * N + n] = norms[m] * norms[n] / P;
    }
    return v;
  };
  const QuadResult<CVec> r = integrate_checked(f, basis.support(state.labels, spec.scheme), spec);
  out.g = CMatrix::Zero(N, N);
  for (int m = 0; m < N; ++m) {
    for (int n = 0; n < N; ++n) {
      out.g(m, n) = 4.0 * c[m] * c[n] * r.value[m * N + n];
      if (m == n) out.g(m, n) -= 4.0 * std::numbers::pi / l2 * s;
    }
  }
  out.abs_error = 4.0 * r.abs_error;
  return out;
}

SphereMetric sphere_metric(const EvolvedBasis& basis, const AmplitudeState& state, SphereMode mode) {
  return sphere_metric(basis, state, mode, basis.default_spec());
}

TruncationReport truncation_report(const EvolvedBasis& basis, const AmplitudeState& state,
                                   const QuadratureSpec& spec) {
  const int N = state.size();
  const SphereMetric base = sphere_metric(basis, state, SphereMode::full, spec);
  AmplitudeState wide = state;
  int next = *std::max_element(state.labels.begin(), state.labels.end());
  wide.coeffs.conservativeResize(N + 2);
  wide.coeffs[N] = wide.coeffs[N + 1] = 0.0;
  wide.labels.push_back(next + 1);
  wide.labels.push_back(next + 2);
  const SphereMetric ext = sphere_metric(basis, wide, SphereMode::full, spec);
  TruncationReport rep;
  rep.n = N;
  rep.common_block_change = std::max((ext.g.topLeftCorner(N, N) - base.g).cwiseAbs().maxCoeff(),
                                     (ext.g_bar.topLeftCorner(N, N) - base.g_bar).cwiseAbs().maxCoeff());
  for (int i = 0; i < N + 2; ++i) {
    for (int j = 0; j < N + 2; ++j) {
      if (i < N && j < N) continue;
      rep.added_block_max = std::max({rep.added_block_max, std::abs(ext.g(i, j)), std::abs(ext.g_bar(i, j))});
    }
  }
  return rep;
}

CVec project_tangent(const AmplitudeState& state, const CVec& dc) {
  if (dc.size() != state.size()) throw Error(ErrorKind::DimensionMismatch, kModule, "tangent size differs from the state");
  const double radial = state.coeffs.dot(dc).real();
  return dc - radial * state.coeffs;
}

}  // namespace qdist
