#include "qdist/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qdist/error.hpp"
#include "qdist/hermite.hpp"

namespace qdist {

Support Support::real_line(double center, double scale) {
  Support s;
  s.kind = Kind::real_line;
  s.center = center;
  s.scale = scale;
  return s;
}

Support Support::interval(double lo, double hi) {
  Support s;
  s.kind = Kind::interval;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Support Support::periodic(double lo, double period) {
  Support s;
  s.kind = Kind::periodic;
  s.lo = lo;
  s.hi = lo + period;
  return s;
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "dist_core", "quadrature tolerances must be positive");
  }
  if (node_count < 2) throw Error(ErrorKind::InvalidInput, "dist_core", "node_count must be >= 2");
  if (max_subdivisions < 1) {
    throw Error(ErrorKind::InvalidInput, "dist_core", "max_subdivisions must be >= 1");
  }
}

QuadratureSpec QuadratureSpec::adaptive(double abs_tol, double rel_tol) {
  QuadratureSpec q;
  q.abs_tol = abs_tol;
  q.rel_tol = rel_tol;
  return q;
}

QuadratureSpec QuadratureSpec::gauss_hermite(int nodes) {
  QuadratureSpec q;
  q.scheme = QuadratureScheme::gauss_hermite;
  q.node_count = nodes;
  return q;
}

QuadratureSpec QuadratureSpec::periodic_trapezoid() {
  QuadratureSpec q;
  q.scheme = QuadratureScheme::periodic_trapezoid;
  return q;
}

namespace detail {
namespace {

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }
double magnitude(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

bool finite(double v) { return std::isfinite(v); }
bool finite(const std::complex<double>& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
bool finite(const Eigen::VectorXcd& v) { return v.allFinite(); }

template <class T>
T zero_like(const T&) {
  return T{};
}
template <>
Eigen::VectorXcd zero_like(const Eigen::VectorXcd& v) {
  return Eigen::VectorXcd::Zero(v.size());
}

// Kronrod 21-point rule with its embedded 10-point Gauss rule, on [-1, 1].
struct KronrodRule {
  std::vector<double> nodes;     // full symmetric set
  std::vector<double> kronrod;   // weights per node
  std::vector<double> gauss;     // embedded Gauss weights (0 where absent)
};

const KronrodRule& kronrod21() {
  static const KronrodRule rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& ka = gauss_kronrod<double, 21>::abscissa();
    const auto& kw = gauss_kronrod<double, 21>::weights();
    const auto& ga = gauss<double, 10>::abscissa();
    const auto& gw = gauss<double, 10>::weights();
    KronrodRule r;
    auto gauss_weight = [&](double x) {
      for (std::size_t j = 0; j < ga.size(); ++j) {
        if (std::abs(ga[j] - x) < 1e-14) return gw[j];
      }
      return 0.0;
    };
    for (std::size_t i = 0; i < ka.size(); ++i) {
      r.nodes.push_back(ka[i]);
      r.kronrod.push_back(kw[i]);
      r.gauss.push_back(gauss_weight(ka[i]));
      if (ka[i] != 0.0) {
        r.nodes.push_back(-ka[i]);
        r.kronrod.push_back(kw[i]);
        r.gauss.push_back(gauss_weight(ka[i]));
      }
    }
    return r;
  }();
  return rule;
}

[[noreturn]] void fail_nonfinite(double x) {
  std::ostringstream os;
  os << "integrand is not finite at x = " << x;
  throw Error(ErrorKind::QuadratureFailure, "dist_core", os.str());
}

// Integrand pulled back to the t-interval of the support.
template <class T>
struct Mapped {
  const std::function<T(double)>& f;
  Support support;

  double lo() const { return support.kind == Support::Kind::real_line ? -1.0 : support.lo; }
  double hi() const { return support.kind == Support::Kind::real_line ? 1.0 : support.hi; }

  T operator()(double t) const {
    if (support.kind != Support::Kind::real_line) {
      T v = f(t);
      if (!finite(v)) fail_nonfinite(t);
      return v;
    }
    const double d = 1.0 - t * t;
    const double x = support.center + support.scale * t / d;
    const double jac = support.scale * (1.0 + t * t) / (d * d);
    T v = f(x);
    if (!finite(v)) fail_nonfinite(x);
    if (magnitude(v) == 0.0) return v;
    return T(v * jac);
  }
};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T>
Panel<T> evaluate_panel(const Mapped<T>& g, double a, double b) {
  const KronrodRule& rule = kronrod21();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T kron{};
  T gauss{};
  bool init = false;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    T v = g(mid + half * rule.nodes[i]);
    if (!init) {
      kron = zero_like(v);
      gauss = zero_like(v);
      init = true;
    }
    kron += T(v * rule.kronrod[i]);
    if (rule.gauss[i] != 0.0) gauss += T(v * rule.gauss[i]);
  }
  kron = T(kron * half);
  gauss = T(gauss * half);
  T diff = kron - gauss;
  return {a, b, kron, magnitude(diff)};
}

template <class T>
QuadResult<T> adaptive(const std::function<T(double)>& f, const Support& support,
                       const QuadratureSpec& spec) {
  const Mapped<T> g{f, support};
  const double lo = g.lo();
  const double hi = g.hi();
  if (!(hi > lo)) {
    if (hi == lo && support.kind != Support::Kind::real_line) {
      return {zero_like(f(lo)), 0.0, 1};
    }
    throw Error(ErrorKind::DomainMismatch, "dist_core", "empty or reversed integration interval");
  }

  const int initial = support.kind == Support::Kind::real_line ? 8 : 4;
  std::priority_queue<Panel<T>> heap;
  T total{};
  double total_err = 0.0;
  int evaluations = 0;
  for (int i = 0; i < initial; ++i) {
    const double a = lo + (hi - lo) * i / initial;
    const double b = lo + (hi - lo) * (i + 1) / initial;
    Panel<T> p = evaluate_panel(g, a, b);
    evaluations += 21;
    total = i == 0 ? p.value : T(total + p.value);
    total_err += p.error;
    heap.push(std::move(p));
  }

  while (true) {
    const double bound = std::max(spec.abs_tol, spec.rel_tol * magnitude(total));
    if (total_err <= bound) break;
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "adaptive quadrature hit the subdivision limit (" << spec.max_subdivisions
         << ") with error estimate " << total_err << " > " << bound;
      throw Error(ErrorKind::NonConvergent, "dist_core", os.str());
    }
    Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-13 * std::max(1.0, std::abs(mid))) {
      std::ostringstream os;
      os << "adaptive quadrature cannot resolve the integrand near t = " << mid
         << " (error estimate " << total_err << ")";
      throw Error(ErrorKind::NonConvergent, "dist_core", os.str());
    }
    Panel<T> left = evaluate_panel(g, worst.a, mid);
    Panel<T> right = evaluate_panel(g, mid, worst.b);
    evaluations += 42;
    total = T(total - worst.value + left.value + right.value);
    total_err = total_err - worst.error + left.error + right.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }

  // Re-sum to shed the drift of the incremental updates.
  T sum{};
  double err = 0.0;
  bool first = true;
  while (!heap.empty()) {
    const Panel<T>& p = heap.top();
    sum = first ? p.value : T(sum + p.value);
    first = false;
    err += p.error;
    heap.pop();
  }
  return {sum, err, evaluations};
}

template <class T>
QuadResult<T> hermite_sum(const std::function<T(double)>& f, const Support& support, int n) {
  const GaussHermiteRule& rule = gauss_hermite_rule(n);
  T sum{};
  for (int i = 0; i < n; ++i) {
    const double x = support.center + support.scale * rule.nodes[i];
    T v = f(x);
    if (!finite(v)) fail_nonfinite(x);
    const double w = std::exp(rule.log_scaled_weights[i]) * support.scale;
    sum = i == 0 ? T(v * w) : T(sum + v * w);
  }
  return {sum, 0.0, n};
}

template <class T>
QuadResult<T> gauss_hermite(const std::function<T(double)>& f, const Support& support,
                            const QuadratureSpec& spec) {
  if (support.kind != Support::Kind::real_line) {
    throw Error(ErrorKind::DomainMismatch, "dist_core",
                "Gauss-Hermite quadrature requires a real-line support");
  }
  QuadResult<T> full = hermite_sum(f, support, spec.node_count);
  const int coarse_n = std::max(1, spec.node_count / 2 + 1);
  QuadResult<T> coarse = hermite_sum(f, support, coarse_n);
  T diff = full.value - coarse.value;
  full.abs_error = magnitude(diff);
  full.evaluations += coarse.evaluations;
  const double bound = std::max(spec.abs_tol, spec.rel_tol * magnitude(full.value));
  if (full.abs_error > bound) {
    std::ostringstream os;
    os << "Gauss-Hermite rule with " << spec.node_count << " nodes did not settle (difference "
       << full.abs_error << " against the " << coarse_n << "-node rule)";
    throw Error(ErrorKind::NonConvergent, "dist_core", os.str());
  }
  return full;
}

template <class T>
QuadResult<T> periodic_trapezoid(const std::function<T(double)>& f, const Support& support,
                                 const QuadratureSpec& spec) {
  if (support.kind != Support::Kind::periodic) {
    throw Error(ErrorKind::DomainMismatch, "dist_core",
                "the periodic trapezoid rule requires a periodic support");
  }
  const double period = support.hi - support.lo;
  auto sample = [&](double x) {
    T v = f(x);
    if (!finite(v)) fail_nonfinite(x);
    return v;
  };
  int n = 8;
  T sum = sample(support.lo);
  for (int j = 1; j < n; ++j) sum = T(sum + sample(support.lo + period * j / n));
  T estimate = T(sum * (period / n));
  int evaluations = n;
  const int cap = std::max(1 << 22, spec.node_count);
  while (n < cap) {
    // Add the midpoints of the current grid.
    for (int j = 0; j < n; ++j) sum = T(sum + sample(support.lo + period * (j + 0.5) / n));
    evaluations += n;
    n *= 2;
    T refined = T(sum * (period / n));
    T diff = refined - estimate;
    const double err = magnitude(diff);
    estimate = refined;
    if (err <= std::max(spec.abs_tol, spec.rel_tol * magnitude(estimate)) && n >= 16) {
      return {estimate, err, evaluations};
    }
  }
  throw Error(ErrorKind::NonConvergent, "dist_core",
              "periodic trapezoid rule did not converge before the node cap");
}

template <class T>
QuadResult<T> dispatch(const std::function<T(double)>& f, const Support& support,
                       const QuadratureSpec& spec) {
  spec.validate();
  switch (spec.scheme) {
    case QuadratureScheme::adaptive_interval:
      return adaptive(f, support, spec);
    case QuadratureScheme::gauss_hermite:
      return gauss_hermite(f, support, spec);
    case QuadratureScheme::periodic_trapezoid:
      return periodic_trapezoid(f, support, spec);
  }
  throw Error(ErrorKind::InvalidInput, "dist_core", "unknown quadrature scheme");
}

}  // namespace

QuadResult<double> integrate_real(const std::function<double(double)>& f, const Support& support,
                                  const QuadratureSpec& spec) {
  return dispatch(f, support, spec);
}

QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, const Support& support,
    const QuadratureSpec& spec) {
  return dispatch(f, support, spec);
}

QuadResult<Eigen::VectorXcd> integrate_vector(const std::function<Eigen::VectorXcd(double)>& f,
                                              const Support& support, const QuadratureSpec& spec) {
  return dispatch(f, support, spec);
}

}  // namespace detail
}  // namespace qdist
