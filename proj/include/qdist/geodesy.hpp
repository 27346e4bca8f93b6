#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdist/families.hpp"

namespace qdist {

/// A metric field g(theta). `eval` must be callable concurrently.
struct MetricField {
  int dim = 0;
  std::function<Mat(const Vec&)> eval;
  // Minimum |det g| relative to the component scale before the metric counts as singular.
  double regularity_hint = 1e-12;
  // Optional domain predicate; paths leaving it raise BlowUp.
  std::function<bool(const Vec&)> in_domain;

  bool contains(const Vec& theta) const { return !in_domain || in_domain(theta); }
};

/// gamma[a](b, c) = Gamma^a_bc, symmetric in (b, c).
using Christoffel = std::vector<Mat>;

/// Christoffel symbols by central differences of the metric, with per-coordinate
/// step h_rel * max(|theta_a|, 1).
Christoffel christoffel(const MetricField& field, const Vec& theta, double h_rel = 1e-5);

enum class PathClass { riemannian, lorentzian_timelike, lorentzian_spacelike, null, mixed };
enum class CausalClass { spacelike, timelike, null, mixed };

std::string to_string(PathClass c);
std::string to_string(CausalClass c);

struct GeodesicPath {
  std::vector<double> s;
  std::vector<Vec> theta;
  std::vector<Vec> velocity;
  double length = 0.0;
  PathClass path_class = PathClass::riemannian;

  std::size_t size() const { return s.size(); }
};

/// RK4 integration of the geodesic equation over s in [0, s_max].
GeodesicPath integrate_geodesic(const MetricField& field, const Vec& theta0, const Vec& v0, double s_max,
                                int steps = 400);

struct ShootingOptions {
  int steps = 400;
  int max_iterations = 50;
  double tolerance = 1e-12;  // endpoint miss, parameter norm
  double accept = 1e-8;      // miss still reported as converged after stagnation
};

struct ShootResult {
  double length = 0.0;
  double endpoint_error = 0.0;
  int iterations = 0;
  GeodesicPath path;
};

/// Two-point geodesic by Newton shooting on the initial velocity, s in [0, 1].
/// Throws NoConvergence with the best endpoint miss when the solve stalls.
ShootResult shoot_distance(const MetricField& field, const Vec& theta1, const Vec& theta2,
                           const ShootingOptions& options = {});

struct IndefiniteLength {
  double length = 0.0;
  CausalClass causal_class = CausalClass::null;
  double min_norm = 0.0;  // min of g(v, v) over the nodes
  double max_norm = 0.0;
};

/// int sqrt|g(v, v)| ds over the path nodes, with the sign pattern of g(v, v).
IndefiniteLength indefinite_length(const MetricField& field, const GeodesicPath& path);

/// Straight coordinate path theta_a -> theta_b over s in [0, 1].
GeodesicPath straight_path(const Vec& theta_a, const Vec& theta_b, int nodes = 101);

/// sup over interior nodes of |dv/ds + Gamma(v, v)|, dv/ds by five-point differences.
double geodesic_residual(const MetricField& field, const GeodesicPath& path);

/// max |g(v, v) - g(v0, v0)| / |g(v0, v0)| along the path.
double speed_drift(const MetricField& field, const GeodesicPath& path);

MetricField constant_metric(const Mat& g);
/// diag(1, 1) / (theta_1)^2 on theta_1 > 0.
MetricField poincare_half_plane();
/// k^2 diag(2, 1) / sigma^2 over (sigma, mean), sigma > 0.
MetricField gaussian_fr_field(double k = 1.0);

}  // namespace qdist
