#pragma once

#include "qdist/families.hpp"
#include "qdist/hilbert_sphere.hpp"
#include "qdist/quadrature.hpp"

namespace qdist {

/// Sphere metric blocks straight from the definitions
///   g_mn = -int P d^2 ln P / dc_m dc_n,   g_m-bar-n = -int P d^2 ln P / dc*_m dc_n,
/// with ln P differentiated by central differences over the real and imaginary
/// parts of c (step h) and converted by the Wirtinger rules.
SphereMetric sphere_metric_finite_difference(const EvolvedBasis& basis, const AmplitudeState& state,
                                             const QuadratureSpec& spec, double h = 1e-4);

/// Psi_n(x, t) = int K(x, t; y, 0) psi_n(y) dy with the oscillator kernel
///   K = lambda / sqrt(2 pi i sin) exp[i lambda^2 (x^2 + y^2) cot / 2 - i lambda^2 x y / sin],
/// integrated numerically over y.
cplx propagated_eigenstate(const EvolvedBasis& basis, int n, double x, const QuadratureSpec& spec = {});

/// conj(Psi_k) Psi_l from two numerical propagations.
cplx propagated_overlap(const EvolvedBasis& basis, int k, int l, double x, const QuadratureSpec& spec = {});

/// acosh(1 + |theta2 - theta1|^2 / (2 theta1_1 theta2_1)) on the half plane.
double poincare_distance(const Vec& theta1, const Vec& theta2);

}  // namespace qdist
