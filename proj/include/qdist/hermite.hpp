#pragma once

#include <vector>

namespace qdist {

/// Physicists' Hermite polynomial H_n(u) by the three-term recurrence
/// H_{n+1} = 2u H_n - 2n H_{n-1}.
double hermite_h(int n, double u);

/// H_0(u) .. H_{n_max}(u).
std::vector<double> hermite_h_values(int n_max, double u);

/// Orthonormal Hermite functions phi_k(u) = H_k(u) exp(-u^2/2) / sqrt(2^k k! sqrt(pi)),
/// k = 0..n_max, evaluated by their normalized recurrence (no factorial overflow).
std::vector<double> hermite_functions(int n_max, double u);

/// Gauss-Hermite rule for the weight exp(-u^2) on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  // log(weights[i]) + nodes[i]^2, i.e. the weight with its envelope removed.
  std::vector<double> log_scaled_weights;
};

/// Cached n-point rule (n >= 1). Nodes come from the Jacobi matrix and are
/// polished by Newton steps; weights use the Christoffel function so tiny
/// outer weights keep full relative accuracy. Thread-safe.
const GaussHermiteRule& gauss_hermite_rule(int n);

}  // namespace qdist
