#include "qdist/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdist/error.hpp"
#include "qdist/fisher_rao.hpp"

namespace qdist {

std::string to_string(PathClass c) {
  switch (c) {
    case PathClass::riemannian: return "riemannian";
    case PathClass::lorentzian_timelike: return "lorentzian-timelike";
    case PathClass::lorentzian_spacelike: return "lorentzian-spacelike";
    case PathClass::null: return "null";
    case PathClass::mixed: return "mixed";
  }
  return "unknown";
}

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::spacelike: return "spacelike";
    case CausalClass::timelike: return "timelike";
    case CausalClass::null: return "null";
    case CausalClass::mixed: return "mixed";
  }
  return "unknown";
}

namespace {

constexpr double kNullTol = 1e-10;

Mat metric_at(const MetricField& field, const Vec& theta) {
  Mat g = field.eval(theta);
  if (g.rows() != field.dim || g.cols() != field.dim) {
    throw Error(ErrorKind::DimensionMismatch, "geodesy", "metric field returned a matrix of the wrong size");
  }
  if (!g.allFinite()) throw Error(ErrorKind::SingularMetric, "geodesy", "metric is not finite");
  return 0.5 * (g + g.transpose());
}

void require_regular(const MetricField& field, const Mat& g) {
  const double scale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  const double det = g.determinant();
  if (!(std::abs(det) > field.regularity_hint * std::pow(scale, field.dim))) {
    throw Error(ErrorKind::SingularMetric, "geodesy", "metric is singular at the evaluation point");
  }
}

// Simpson's rule over possibly uneven nodes; a trailing odd interval uses the trapezoid.
double simpson_nodes(const std::vector<double>& s, const std::vector<double>& f) {
  const std::size_t n = s.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = s[i + 1] - s[i];
    const double h1 = s[i + 2] - s[i + 1];
    sum += (h0 + h1) / 6.0 *
           ((2.0 - h1 / h0) * f[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) sum += 0.5 * (s[i + 1] - s[i]) * (f[i] + f[i + 1]);
  return sum;
}

Vec acceleration(const MetricField& field, const Vec& theta, const Vec& v) {
  const Christoffel gamma = christoffel(field, theta);
  Vec a(field.dim);
  for (int i = 0; i < field.dim; ++i) a[i] = -v.dot(gamma[i] * v);
  return a;
}

PathClass classify_path(const MetricField& field, const GeodesicPath& path) {
  bool definite = true;
  int pos = 0;
  int neg = 0;
  int zero = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Mat g = metric_at(field, path.theta[i]);
    const Signature sig = signature_of(g);
    if (sig.n_plus != field.dim) definite = false;
    const double q = path.velocity[i].dot(g * path.velocity[i]);
    if (q > kNullTol) {
      ++pos;
    } else if (q < -kNullTol) {
      ++neg;
    } else {
      ++zero;
    }
  }
  if (definite) return PathClass::riemannian;
  if (pos > 0 && neg > 0) return PathClass::mixed;
  if (pos > 0) return PathClass::lorentzian_spacelike;
  if (neg > 0) return PathClass::lorentzian_timelike;
  return PathClass::null;
}

double path_length(const MetricField& field, const GeodesicPath& path) {
  std::vector<double> f(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Mat g = metric_at(field, path.theta[i]);
    f[i] = std::sqrt(std::abs(path.velocity[i].dot(g * path.velocity[i])));
  }
  return simpson_nodes(path.s, f);
}

}  // namespace

Christoffel christoffel(const MetricField& field, const Vec& theta, double h_rel) {
  const int d = field.dim;
  if (theta.size() != d) throw Error(ErrorKind::DimensionMismatch, "geodesy", "point dimension mismatch");
  const Mat g = metric_at(field, theta);
  require_regular(field, g);
  // dg[c](a, b) = d_c g_ab
  std::vector<Mat> dg(d);
  for (int c = 0; c < d; ++c) {
    const double h = h_rel * std::max(std::abs(theta[c]), 1.0);
    Vec plus = theta;
    Vec minus = theta;
    plus[c] += h;
    minus[c] -= h;
    dg[c] = (metric_at(field, plus) - metric_at(field, minus)) / (2.0 * h);
  }
  const Mat g_inv = g.inverse();
  // Lowered symbols Gamma_{l,bc} = (d_b g_lc + d_c g_lb - d_l g_bc) / 2.
  std::vector<Mat> lowered(d, Mat(d, d));
  for (int l = 0; l < d; ++l) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) lowered[l](b, c) = 0.5 * (dg[b](l, c) + dg[c](l, b) - dg[l](b, c));
    }
  }
  Christoffel gamma(d, Mat::Zero(d, d));
  for (int a = 0; a < d; ++a) {
    for (int l = 0; l < d; ++l) gamma[a] += g_inv(a, l) * lowered[l];
    gamma[a] = 0.5 * (gamma[a] + gamma[a].transpose());
  }
  return gamma;
}

GeodesicPath integrate_geodesic(const MetricField& field, const Vec& theta0, const Vec& v0, double s_max,
                                int steps) {
  if (theta0.size() != field.dim || v0.size() != field.dim) {
    throw Error(ErrorKind::DimensionMismatch, "geodesy", "initial point and velocity must match the metric dimension");
  }
  if (!(s_max > 0.0) || steps < 2) {
    throw Error(ErrorKind::InvalidInput, "geodesy", "need s_max > 0 and at least two steps");
  }
  if (!field.contains(theta0)) throw Error(ErrorKind::OutOfDomain, "geodesy", "initial point outside the domain");
  const double h = s_max / steps;
  GeodesicPath path;
  path.s.reserve(steps + 1);
  path.theta.reserve(steps + 1);
  path.velocity.reserve(steps + 1);
  Vec x = theta0;
  Vec v = v0;
  path.s.push_back(0.0);
  path.theta.push_back(x);
  path.velocity.push_back(v);
  auto check = [&](const Vec& p) {
    if (!p.allFinite() || !field.contains(p)) {
      throw Error(ErrorKind::BlowUp, "geodesy", "geodesic left the parameter domain");
    }
  };
  for (int i = 1; i <= steps; ++i) {
    const Vec k1x = v;
    const Vec k1v = acceleration(field, x, v);
    Vec xm = x + 0.5 * h * k1x;
    check(xm);
    const Vec k2x = v + 0.5 * h * k1v;
    const Vec k2v = acceleration(field, xm, k2x);
    xm = x + 0.5 * h * k2x;
    check(xm);
    const Vec k3x = v + 0.5 * h * k2v;
    const Vec k3v = acceleration(field, xm, k3x);
    xm = x + h * k3x;
    check(xm);
    const Vec k4x = v + h * k3v;
    const Vec k4v = acceleration(field, xm, k4x);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    check(x);
    if (!v.allFinite()) throw Error(ErrorKind::BlowUp, "geodesy", "geodesic velocity diverged");
    path.s.push_back(i == steps ? s_max : i * h);
    path.theta.push_back(x);
    path.velocity.push_back(v);
  }
  path.length = path_length(field, path);
  path.path_class = classify_path(field, path);
  return path;
}

ShootResult shoot_distance(const MetricField& field, const Vec& theta1, const Vec& theta2,
                           const ShootingOptions& options) {
  const int d = field.dim;
  if (theta1.size() != d || theta2.size() != d) {
    throw Error(ErrorKind::DimensionMismatch, "geodesy", "endpoints must match the metric dimension");
  }
  if (!field.contains(theta1) || !field.contains(theta2)) {
    throw Error(ErrorKind::OutOfDomain, "geodesy", "endpoint outside the domain");
  }
  const Signature sig = signature_of(metric_at(field, theta1));
  if (sig.n_plus != d) {
    throw Error(ErrorKind::SingularMetric, "geodesy", "shooting needs a positive-definite metric");
  }

  ShootResult result;
  if ((theta2 - theta1).norm() == 0.0) {
    result.path = integrate_geodesic(field, theta1, Vec::Zero(d), 1.0, options.steps);
    return result;
  }

  auto endpoint = [&](const Vec& v) { return integrate_geodesic(field, theta1, v, 1.0, options.steps).theta.back(); };
  auto miss_of = [&](const Vec& v, Vec& miss) {
    try {
      miss = endpoint(v) - theta2;
      return miss.norm();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::BlowUp || e.kind() == ErrorKind::SingularMetric) {
        return std::numeric_limits<double>::infinity();
      }
      throw;
    }
  };

  Vec v = theta2 - theta1;
  Vec miss;
  double err = miss_of(v, miss);
  if (!std::isfinite(err)) {
    throw Error(ErrorKind::NoConvergence, "geodesy", "initial shooting guess leaves the domain");
  }
  int it = 0;
  for (; it < options.max_iterations && err > options.tolerance; ++it) {
    Mat J(d, d);
    const double eps = 1e-7 * std::max(1.0, v.lpNorm<Eigen::Infinity>());
    for (int j = 0; j < d; ++j) {
      Vec vp = v;
      Vec vm = v;
      vp[j] += eps;
      vm[j] -= eps;
      J.col(j) = (endpoint(vp) - endpoint(vm)) / (2.0 * eps);
    }
    const Vec step = J.fullPivLu().solve(-miss);
    if (!step.allFinite()) break;
    double alpha = 1.0;
    bool improved = false;
    while (alpha > 1e-6) {
      Vec trial_miss;
      const Vec trial = v + alpha * step;
      const double trial_err = miss_of(trial, trial_miss);
      if (trial_err < err) {
        v = trial;
        miss = trial_miss;
        err = trial_err;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
  }
  if (!(err <= options.tolerance) && !(err <= options.accept)) {
    std::ostringstream os;
    os.precision(6);
    os << "shooting did not converge after " << it << " iterations; best endpoint miss " << err
       << " (possible conjugate point)";
    throw Error(ErrorKind::NoConvergence, "geodesy", os.str());
  }
  result.path = integrate_geodesic(field, theta1, v, 1.0, options.steps);
  result.endpoint_error = err;
  result.iterations = it;
  result.length = result.path.length;
  return result;
}

IndefiniteLength indefinite_length(const MetricField& field, const GeodesicPath& path) {
  IndefiniteLength out;
  if (path.size() == 0) return out;
  std::vector<double> f(path.size());
  out.min_norm = std::numeric_limits<double>::infinity();
  out.max_norm = -std::numeric_limits<double>::infinity();
  bool pos = false;
  bool neg = false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Mat g = metric_at(field, path.theta[i]);
    const double q = path.velocity[i].dot(g * path.velocity[i]);
    out.min_norm = std::min(out.min_norm, q);
    out.max_norm = std::max(out.max_norm, q);
    if (q > kNullTol) pos = true;
    if (q < -kNullTol) neg = true;
    f[i] = std::sqrt(std::abs(q));
  }
  out.length = simpson_nodes(path.s, f);
  if (pos && neg) {
    out.causal_class = CausalClass::mixed;
  } else if (pos) {
    out.causal_class = CausalClass::spacelike;
  } else if (neg) {
    out.causal_class = CausalClass::timelike;
  } else {
    out.causal_class = CausalClass::null;
  }
  return out;
}

GeodesicPath straight_path(const Vec& theta_a, const Vec& theta_b, int nodes) {
  if (theta_a.size() != theta_b.size()) throw Error(ErrorKind::DimensionMismatch, "geodesy", "endpoint sizes differ");
  if (nodes < 2) throw Error(ErrorKind::InvalidInput, "geodesy", "a path needs at least two nodes");
  GeodesicPath path;
  const Vec v = theta_b - theta_a;
  for (int i = 0; i < nodes; ++i) {
    const double s = static_cast<double>(i) / (nodes - 1);
    path.s.push_back(s);
    path.theta.push_back(theta_a + s * v);
    path.velocity.push_back(v);
  }
  return path;
}

double geodesic_residual(const MetricField& field, const GeodesicPath& path) {
  const std::size_t n = path.size();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double h = path.s[i + 1] - path.s[i];
    const Vec dv = (-path.velocity[i + 2] + 8.0 * path.velocity[i + 1] - 8.0 * path.velocity[i - 1] +
                    path.velocity[i - 2]) /
                   (12.0 * h);
    const Vec r = dv - acceleration(field, path.theta[i], path.velocity[i]);
    worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

double speed_drift(const MetricField& field, const GeodesicPath& path) {
  if (path.size() == 0) return 0.0;
  auto q = [&](std::size_t i) {
    return path.velocity[i].dot(metric_at(field, path.theta[i]) * path.velocity[i]);
  };
  const double q0 = q(0);
  const double scale = std::max(std::abs(q0), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) worst = std::max(worst, std::abs(q(i) - q0) / scale);
  return worst;
}

MetricField constant_metric(const Mat& g) {
  MetricField f;
  f.dim = static_cast<int>(g.rows());
  f.eval = [g](const Vec&) { return g; };
  return f;
}

MetricField poincare_half_plane() {
  MetricField f;
  f.dim = 2;
  f.eval = [](const Vec& th) { return Mat(Mat::Identity(2, 2) / (th[0] * th[0])); };
  f.in_domain = [](const Vec& th) { return th[0] > 0.0; };
  return f;
}

MetricField gaussian_fr_field(double k) {
  MetricField f;
  f.dim = 2;
  f.eval = [k](const Vec& th) {
    const double w = k * k / (th[0] * th[0]);
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = 2.0 * w;
    g(1, 1) = w;
    return g;
  };
  f.in_domain = [](const Vec& th) { return th[0] > 0.0; };
  return f;
}

}  // namespace qdist
