#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdist/error.hpp"
#include "qdist/qinfo_entropy.hpp"

using namespace qdist;

namespace {

constexpr double kPi = std::numbers::pi;

CMat random_full_rank(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  CMat a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) a(i, k) = std::complex<double>(g(rng), g(rng));
  }
  CMat r = a * a.adjoint() + 1e-3 * CMat::Identity(d, d);
  return r / r.trace().real();
}

CMat random_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  CMat a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) a(i, k) = std::complex<double>(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMat> qr(a);
  return qr.householderQ();
}

CMat hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  CMat a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) a(i, k) = std::complex<double>(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

Vec vec(std::initializer_list<double> xs) {
  Vec v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST(DensityMatrix, RejectsNonHermitian) {
  CMat m = CMat::Identity(2, 2) * 0.5;
  m(0, 1) = 0.1;
  try {
    DensityMatrix::from_matrix(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidState);
  }
}

TEST(DensityMatrix, RejectsWrongTrace) {
  EXPECT_THROW(DensityMatrix::from_matrix(CMat::Identity(2, 2)), Error);
}

TEST(DensityMatrix, RejectsNegativeEigenvalue) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix::from_matrix(m), Error);
}

TEST(VonNeumann, PureState) {
  EXPECT_EQ(von_neumann_entropy(DensityMatrix::diagonal(vec({1, 0, 0}))), 0.0);
}

TEST(VonNeumann, MaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(Vec::Constant(4, 0.25))), std::log(4.0), 1e-14);
}

TEST(VonNeumann, BinarySpectrum) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(vec({0.7, 0.3}))), 0.6108643020548935, 1e-14);
}

TEST(RelativeEntropy, IdenticalIsZero) {
  std::mt19937_64 rng(1);
  const DensityMatrix r = DensityMatrix::from_matrix(random_full_rank(rng, 3));
  EXPECT_EQ(relative_entropy(r, r), 0.0);
}

TEST(RelativeEntropy, OrthogonalPureStatesDiverge) {
  EXPECT_TRUE(std::isinf(relative_entropy(DensityMatrix::diagonal(vec({1, 0})), DensityMatrix::diagonal(vec({0, 1})))));
}

TEST(RelativeEntropy, CommutingPair) {
  const double s = relative_entropy(DensityMatrix::diagonal(vec({0.5, 0.5})), DensityMatrix::diagonal(vec({0.7, 0.3})));
  EXPECT_NEAR(s, 0.5 * std::log(0.5 / 0.7) + 0.5 * std::log(0.5 / 0.3), 1e-14);
  EXPECT_NEAR(s, 0.08717669357238891, 1e-14);
}

TEST(RelativeEntropy, CommutingPairInRotatedBasis) {
  std::mt19937_64 rng(3);
  const CMat U = random_unitary(rng, 2);
  CMat a = CMat::Zero(2, 2), b = CMat::Zero(2, 2);
  a(0, 0) = a(1, 1) = 0.5;
  b(0, 0) = 0.7;
  b(1, 1) = 0.3;
  const double s = relative_entropy(DensityMatrix::from_matrix(U * a * U.adjoint()),
                                    DensityMatrix::from_matrix(U * b * U.adjoint()));
  EXPECT_NEAR(s, 0.08717669357238891, 1e-12);
}

TEST(RelativeEntropy, DimensionMismatch) {
  try {
    relative_entropy(DensityMatrix::diagonal(vec({1, 0})), DensityMatrix::diagonal(vec({1, 0, 0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(RelativeEntropy, KleinInequality) {
  std::mt19937_64 rng(200);
  const int dims[4] = {2, 3, 4, 8};
  for (int i = 0; i < 200; ++i) {
    const int d = dims[i % 4];
    const DensityMatrix r = DensityMatrix::from_matrix(random_full_rank(rng, d));
    const DensityMatrix s = DensityMatrix::from_matrix(random_full_rank(rng, d));
    EXPECT_GT(relative_entropy(r, s), 0.0);
    EXPECT_EQ(relative_entropy(r, r), 0.0);
  }
}

TEST(RelativeEntropy, UnitaryInvariance) {
  std::mt19937_64 rng(77);
  for (int d : {2, 3, 5}) {
    const CMat r = random_full_rank(rng, d);
    const CMat s = random_full_rank(rng, d);
    const CMat U = random_unitary(rng, d);
    const double a = relative_entropy(DensityMatrix::from_matrix(r), DensityMatrix::from_matrix(s));
    CMat ur = U * r * U.adjoint();
    CMat us = U * s * U.adjoint();
    ur = 0.5 * (ur + ur.adjoint());
    us = 0.5 * (us + us.adjoint());
    const double b = relative_entropy(DensityMatrix::from_matrix(ur), DensityMatrix::from_matrix(us));
    EXPECT_NEAR(a, b, 1e-9);
  }
}

TEST(Decomposition, IdenticalStates) {
  const DensityMatrix r = DensityMatrix::diagonal(vec({0.6, 0.4}));
  const RelEntropyParts p = relative_entropy_decomposed(r, r);
  EXPECT_NEAR(p.entropy_sigma, von_neumann_entropy(r), 1e-15);
  EXPECT_NEAR(p.entropy_rho, von_neumann_entropy(r), 1e-15);
  EXPECT_NEAR(p.cross, 0.0, 1e-15);
  EXPECT_NEAR(p.total(), 0.0, 1e-15);
}

TEST(Decomposition, MatchesDirectForm) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix r = DensityMatrix::from_matrix(random_full_rank(rng, 3));
    const DensityMatrix s = DensityMatrix::from_matrix(random_full_rank(rng, 3));
    EXPECT_NEAR(relative_entropy_decomposed(r, s).total(), relative_entropy(r, s), 1e-10);
  }
}

TEST(Decomposition, MaximallyMixedReference) {
  const DensityMatrix r = DensityMatrix::diagonal(vec({0.9, 0.1}));
  const DensityMatrix s = DensityMatrix::diagonal(vec({0.5, 0.5}));
  const RelEntropyParts p = relative_entropy_decomposed(r, s);
  EXPECT_NEAR(p.cross, 0.0, 1e-15);
  EXPECT_NEAR(p.total(), 0.3680642071684971, 1e-14);
}

TEST(Decomposition, SupportViolation) {
  try {
    relative_entropy_decomposed(DensityMatrix::diagonal(vec({1, 0})), DensityMatrix::diagonal(vec({0, 1})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SupportViolation);
  }
}

TEST(Gibbs, HighTemperatureLimit) {
  CMat H = CMat::Zero(2, 2);
  H(1, 1) = 0.3;
  const DensityMatrix s = gibbs_state(ThermalModel::from_hamiltonian(H, 1e-12));
  EXPECT_NEAR(s.matrix()(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(s.matrix()(1, 1).real(), 0.5, 1e-12);
}

TEST(Gibbs, TwoLevelAtLogThree) {
  const GibbsSpectrum g = gibbs_spectrum(ThermalModel::from_spectrum(vec({0, 1}), std::log(3.0)));
  EXPECT_NEAR(g.probabilities[0], 0.75, 1e-15);
  EXPECT_NEAR(g.probabilities[1], 0.25, 1e-15);
  EXPECT_NEAR(g.log_z, std::log(4.0 / 3.0), 1e-15);
}

TEST(Gibbs, LargeEnergiesStayFinite) {
  const GibbsSpectrum g = gibbs_spectrum(ThermalModel::from_spectrum(vec({1e4, 1e4 + 1}), 50.0));
  EXPECT_TRUE(std::isfinite(g.log_z));
  EXPECT_NEAR(g.probabilities.sum(), 1.0, 1e-15);
}

TEST(Gibbs, RejectsNonPositiveBeta) {
  try {
    gibbs_spectrum(ThermalModel::from_spectrum(vec({0, 1}), 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfDomain);
  }
}

TEST(Gibbs, MaximumEntropyAtFixedEnergy) {
  const Vec E = vec({0, 1, 2});
  const GibbsSpectrum g = gibbs_spectrum(ThermalModel::from_spectrum(E, 1.0));
  // (1, -2, 1) keeps both the trace and the mean energy.
  const Vec dir = vec({1, -2, 1});
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> eps(-0.1, 0.1);
  for (int i = 0; i < 20; ++i) {
    const Vec p = g.probabilities + eps(rng) * dir;
    if (p.minCoeff() <= 0.0) continue;
    EXPECT_NEAR(p.dot(E), g.energy, 1e-12);
    EXPECT_LE(von_neumann_entropy(DensityMatrix::diagonal(p)), g.entropy + 1e-9);
  }
}

TEST(Gibbs, OscillatorSpectrum) {
  const Vec e = oscillator_spectrum(1.0, 4);
  ASSERT_EQ(e.size(), 4);
  EXPECT_DOUBLE_EQ(e[0], 0.5);
  EXPECT_DOUBLE_EQ(e[3], 3.5);
  // Levels beyond Boltzmann weight 1e-18 are dropped.
  const Vec cut = oscillator_spectrum(1.0, 2.0);
  EXPECT_LT(std::exp(-2.0 * (cut[cut.size() - 1] - cut[0])), 1e-17);
}

TEST(Thermal, SelfDistanceIsZero) {
  std::mt19937_64 rng(4);
  const ThermalModel m = ThermalModel::from_hamiltonian(hermitian(rng, 3), 0.9);
  EXPECT_NEAR(thermal_relative_entropy(gibbs_state(m), m), 0.0, 1e-12);
}

TEST(Thermal, PathsAgree) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> beta(0.2, 2.0);
  for (int i = 0; i < 10; ++i) {
    const CMat H = hermitian(rng, 4);
    const double b = beta(rng);
    const double bt = beta(rng);
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    const Vec e = es.eigenvalues();
    const ThermalModel sigma = ThermalModel::from_hamiltonian(H, bt);
    const DensityMatrix rho = gibbs_state(ThermalModel::from_hamiltonian(H, b));
    const double direct = relative_entropy(rho, gibbs_state(sigma));
    EXPECT_NEAR(relative_entropy_decomposed(rho, gibbs_state(sigma)).total(), direct, 1e-9);
    EXPECT_NEAR(thermal_relative_entropy(rho, sigma), direct, 1e-9);
    EXPECT_NEAR(two_thermal_relative_entropy(e, b, bt), direct, 1e-9);
  }
}

TEST(Thermal, MixedHamiltonians) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 5; ++i) {
    const CMat H = hermitian(rng, 3);
    const CMat h = hermitian(rng, 3);
    EXPECT_NEAR(mixed_thermal_relative_entropy_expanded(H, h, 0.8, 1.4), mixed_thermal_relative_entropy(H, h, 0.8, 1.4),
                1e-9);
  }
}

TEST(ScalarField, EqualTemperaturesGiveZero) {
  EXPECT_NEAR(scalar_field_rel_entropy(1.0, 1.3, 1.3), 0.0, 1e-12);
}

TEST(ScalarField, RegressionValue) {
  EXPECT_NEAR(scalar_field_rel_entropy(1.0, 1.0, 2.0), 4 * std::pow(kPi, 5) * 17 / 360, 1e-11);
  EXPECT_NEAR(scalar_field_rel_entropy(1.0, 1.0, 2.0), 57.80371823721982, 1e-11);
}

TEST(ScalarField, SmallDeltaLaw) {
  const double b = 1.7;
  const double d = 1e-3 * b;
  const double C = scalar_field_coefficient(2.0);
  EXPECT_NEAR(scalar_field_rel_entropy(2.0, b, b + d) / (6 * C * d * d / std::pow(b, 5)), 1.0, 0.01);
}

// S_rel = (C / b^4) (6 e^2 + 8 e^3 + 3 e^4) / (1 + e)^3 with e = delta / b, whose
// cubic term is -10 e^3.
TEST(ScalarField, NextOrderCoefficient) {
  const double b = 1.0;
  const double d = 1e-2;
  const double C = scalar_field_coefficient(1.0);
  const double lead = 6 * C * d * d / std::pow(b, 5);
  const double rel = (scalar_field_rel_entropy(1.0, b, b + d) - lead) / (C * d * d / std::pow(b, 5));
  EXPECT_NEAR(rel / (d / b), -10.0, 1.0);
}

TEST(ScalarField, EntropyIsFourThirdsBetaEnergy) {
  for (double beta : {0.3, 1.0, 4.2}) {
    EXPECT_NEAR(scalar_field_entropy(2.5, beta), 4.0 / 3.0 * beta * scalar_field_energy(2.5, beta),
                1e-12 * scalar_field_entropy(2.5, beta));
  }
}

TEST(ScalarField, MetricCoefficientIsSixC) {
  EXPECT_NEAR(scalar_field_metric_a(1.3), 6 * scalar_field_coefficient(1.3), 1e-12);
}

TEST(ScalarField, BetaInvertsEnergy) {
  EXPECT_NEAR(scalar_field_beta(1.5, scalar_field_energy(1.5, 0.8)), 0.8, 1e-13);
}

TEST(ScalarField, DistanceCoincident) {
  EXPECT_EQ(scalar_field_distance(3.0, 3.0, 1.0), 0.0);
}

TEST(ScalarField, DistanceClosedFormMatchesQuadrature) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> e(0.1, 50.0);
  std::uniform_real_distribution<double> v(0.1, 10.0);
  for (int i = 0; i < 10; ++i) {
    const double a = e(rng), b = e(rng), vol = v(rng);
    const double e1 = std::min(a, b), e2 = std::max(a, b);
    const double closed = scalar_field_distance(e1, e2, vol);
    EXPECT_NEAR(scalar_field_distance_numeric(e1, e2, vol).value, closed, 1e-8 * closed);
  }
}

TEST(ScalarField, DistanceIsAdditive) {
  const double d12 = scalar_field_distance(1.0, 2.5, 1.0);
  const double d23 = scalar_field_distance(2.5, 7.0, 1.0);
  EXPECT_NEAR(scalar_field_distance(1.0, 7.0, 1.0), d12 + d23, 1e-12);
}

TEST(ScalarField, RejectsNonPositiveInputs) {
  EXPECT_THROW(scalar_field_rel_entropy(0.0, 1.0, 1.0), Error);
  EXPECT_THROW(scalar_field_distance(-1.0, 1.0, 1.0), Error);
}
