#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdist/error.hpp"
#include "qdist/hilbert_sphere.hpp"
#include "qdist/oracles.hpp"

using namespace qdist;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

AmplitudeState random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CVec c(n);
  for (int i = 0; i < n; ++i) c[i] = cplx(g(rng), g(rng));
  return AmplitudeState::make(c / c.norm());
}

double integrate_p(const EvolvedBasis& b, const AmplitudeState& s) {
  const QuadratureSpec spec = b.default_spec();
  return integrate([&](double x) { return probability(b, s, x); }, b.support(s.labels, spec.scheme), spec).value;
}

}  // namespace

TEST(AmplitudeState, RejectsUnnormalized) {
  CVec c(2);
  c << 1.0, 1.0;
  try {
    AmplitudeState::make(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidState);
  }
}

TEST(AmplitudeState, RejectsDuplicateLabels) {
  CVec c(2);
  c << std::sqrt(0.5), std::sqrt(0.5);
  EXPECT_THROW(AmplitudeState::make(c, {3, 3}), Error);
}

TEST(Overlap, FreeParticleDiagonal) {
  const EvolvedBasis b = EvolvedBasis::free_particle(1.0, 0.8);
  for (double x : {0.0, 1.3, 5.0}) EXPECT_NEAR(std::abs(overlap_density(b, 2, 2, x) - 1.0 / (2 * kPi)), 0.0, 1e-15);
}

TEST(Overlap, FreeParticlePhaseAtZeroTime) {
  const EvolvedBasis b = EvolvedBasis::free_particle(1.0, 0.0);
  EXPECT_NEAR(std::abs(overlap_density(b, 1, 0, kPi / 2) - I / (2 * kPi)), 0.0, 1e-15);
}

TEST(Overlap, FreeParticleTimePhase) {
  // I_kl = exp[i x (k - l) - i (hbar t / 2m)(k^2 - l^2)] / 2 pi
  const EvolvedBasis b = EvolvedBasis::free_particle(2.0, 0.6);
  const double tau = 0.6 / 4.0;
  const cplx want = std::exp(I * (0.9 * (2 - (-1)) - tau * (4 - 1))) / (2 * kPi);
  EXPECT_NEAR(std::abs(overlap_density(b, 2, -1, 0.9) - want), 0.0, 1e-15);
}

TEST(Overlap, OscillatorGroundAtOrigin) {
  for (double t : {0.0, 0.7, 2.1}) {
    const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, t);
    EXPECT_NEAR(overlap_density(b, 0, 0, 0.0).real(), 1.0 / std::sqrt(kPi), 1e-14);
  }
}

TEST(Overlap, MatchesKernelPropagation) {
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.7);
  EXPECT_NEAR(std::abs(propagated_overlap(b, 0, 0, 0.0) - 1.0 / std::sqrt(kPi)), 0.0, 1e-6);
  for (auto [k, l, x] : {std::tuple{1, 2, 0.5}, std::tuple{0, 3, -0.8}}) {
    EXPECT_NEAR(std::abs(propagated_overlap(b, k, l, x) - overlap_density(b, k, l, x)), 0.0, 1e-6);
  }
}

TEST(Overlap, KernelCausticRejected) {
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, kPi);
  try {
    propagated_eigenstate(b, 0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PropagatorCaustic);
  }
}

TEST(Overlap, Hermitian) {
  const EvolvedBasis b = EvolvedBasis::oscillator(1.3, 0.8, 0.45);
  for (int m = 0; m < 5; ++m) {
    for (int n = 0; n < 5; ++n) {
      for (double x : {-1.0, 0.2, 2.5}) {
        EXPECT_NEAR(std::abs(overlap_density(b, m, n, x) - std::conj(overlap_density(b, n, m, x))), 0.0, 1e-15);
      }
    }
  }
}

TEST(Overlap, Orthonormal) {
  for (const EvolvedBasis& b : {EvolvedBasis::oscillator(1.0, 1.0, 0.4), EvolvedBasis::free_particle(1.0, 0.4)}) {
    const QuadratureSpec spec = b.default_spec();
    const int lo = b.system == SphereSystem::free_particle_circle ? -4 : 0;
    for (int m = lo; m <= 8; ++m) {
      for (int n = lo; n <= 8; ++n) {
        const cplx v =
            integrate([&](double x) { return overlap_density(b, m, n, x); }, b.support({m, n}, spec.scheme), spec).value;
        EXPECT_NEAR(std::abs(v - cplx(m == n ? 1.0 : 0.0)), 0.0, 1e-8) << m << "," << n;
      }
    }
  }
}

TEST(Probability, SingleModeIsStationary) {
  CVec c(1);
  c << 1.0;
  const AmplitudeState s = AmplitudeState::make(c, {2});
  const EvolvedBasis b3 = EvolvedBasis::oscillator(1.0, 1.0, 0.3);
  const EvolvedBasis b9 = EvolvedBasis::oscillator(1.0, 1.0, 0.9);
  for (double x = -3.0; x <= 3.0; x += 0.25) EXPECT_NEAR(probability(b3, s, x), probability(b9, s, x), 1e-9);
}

TEST(Probability, FreeParticleTwoModes) {
  CVec c(2);
  c << std::sqrt(0.5), std::sqrt(0.5);
  const AmplitudeState s = AmplitudeState::make(c, {0, 1});
  const EvolvedBasis b = EvolvedBasis::free_particle(1.0, 0.0);
  for (double x = 0.0; x < 2 * kPi; x += 0.3) {
    EXPECT_NEAR(probability(b, s, x), (1.0 + std::cos(x)) / (2 * kPi), 1e-14);
  }
}

TEST(Probability, Normalized) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const AmplitudeState s = random_state(rng, 3);
    EXPECT_NEAR(integrate_p(EvolvedBasis::oscillator(1.0, 1.0, 0.1 * i + 0.05), s), 1.0, 1e-8);
    EXPECT_NEAR(integrate_p(EvolvedBasis::free_particle(1.0, 0.1 * i), s), 1.0, 1e-8);
  }
}

TEST(Probability, GlobalPhaseInvariant) {
  std::mt19937_64 rng(2);
  const AmplitudeState s = random_state(rng, 3);
  const AmplitudeState r = AmplitudeState::make(s.coeffs * std::exp(I * 0.77));
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.6);
  for (double x = -3.0; x <= 3.0; x += 0.5) EXPECT_NEAR(probability(b, s, x), probability(b, r, x), 1e-14);
}

TEST(ATensor, SingleModeCollapsesToNormalization) {
  CVec c(1);
  c << 1.0;
  const AmplitudeState s = AmplitudeState::make(c);
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.5);
  EXPECT_NEAR(std::abs(a_integral(b, s, 0, 0, 0, 0, b.default_spec()).value - 1.0), 0.0, 1e-9);
}

TEST(ATensor, FreeParticleNodeIsDegenerate) {
  CVec c(2);
  c << std::sqrt(0.5), std::sqrt(0.5);
  const AmplitudeState s = AmplitudeState::make(c, {0, 1});
  const EvolvedBasis b = EvolvedBasis::free_particle(1.0, 0.0);
  try {
    a_integral(b, s, 0, 0, 0, 0, b.default_spec());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateState);
  }
}

TEST(ATensor, EntryMatchesSingleIntegral) {
  CVec c(2);
  c << std::sqrt(0.9), std::sqrt(0.1);
  const AmplitudeState s = AmplitudeState::make(c);
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.5);
  const ATensor A = a_tensor(b, s, b.default_spec());
  for (auto [k, p, m, n] : {std::tuple{0, 0, 0, 0}, std::tuple{0, 1, 1, 0}, std::tuple{1, 1, 0, 1}}) {
    EXPECT_NEAR(std::abs(A(k, p, m, n) - a_integral(b, s, k, p, m, n, b.default_spec()).value), 0.0, 1e-9);
  }
}

TEST(SphereMetric, MatchesFiniteDifferenceDefinition) {
  std::mt19937_64 rng(17);
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.4);
  for (int n : {2, 3}) {
    const AmplitudeState s = random_state(rng, n);
    const SphereMetric g = sphere_metric(b, s, SphereMode::full);
    const SphereMetric fd = sphere_metric_finite_difference(b, s, QuadratureSpec::adaptive(1e-8, 1e-7));
    EXPECT_LT((g.g - fd.g).cwiseAbs().maxCoeff(), 1e-5) << "N=" << n;
    EXPECT_LT((g.g_bar - fd.g_bar).cwiseAbs().maxCoeff(), 1e-5) << "N=" << n;
  }
}

// ln P = ln c.a* + ln conj(c.a*) splits into holomorphic and antiholomorphic parts.
TEST(SphereMetric, MixedBlockVanishes) {
  std::mt19937_64 rng(19);
  const AmplitudeState s = random_state(rng, 3);
  const SphereMetric g = sphere_metric(EvolvedBasis::oscillator(1.0, 1.0, 0.8), s);
  EXPECT_LT(g.g_bar.cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SphereMetric, Symmetric) {
  std::mt19937_64 rng(23);
  const SphereMetric g = sphere_metric(EvolvedBasis::oscillator(1.0, 1.0, 0.8), random_state(rng, 3));
  EXPECT_LT((g.g - g.g.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SphereMetric, LineElementIsReal) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> nd;
  const AmplitudeState s = random_state(rng, 3);
  const SphereMetric g = sphere_metric(EvolvedBasis::oscillator(1.0, 1.0, 0.4), s);
  for (int i = 0; i < 20; ++i) {
    CVec dc(3);
    for (int k = 0; k < 3; ++k) dc[k] = cplx(nd(rng), nd(rng));
    const CVec t = project_tangent(s, dc);
    EXPECT_NEAR(s.coeffs.dot(t).real(), 0.0, 1e-14);
    EXPECT_LT(std::abs(g.line_element(t).imag()), 1e-10);
  }
}

TEST(SphereMetric, GlobalPhaseOnRotatedTangents) {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> nd;
  const AmplitudeState s = random_state(rng, 2);
  const cplx phase = std::exp(I * 1.1);
  const AmplitudeState r = AmplitudeState::make(s.coeffs * phase);
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.5);
  const SphereMetric gs = sphere_metric(b, s);
  const SphereMetric gr = sphere_metric(b, r);
  for (int i = 0; i < 5; ++i) {
    CVec dc(2);
    for (int k = 0; k < 2; ++k) dc[k] = cplx(nd(rng), nd(rng));
    const CVec t = project_tangent(s, dc);
    EXPECT_NEAR(gs.line_element(t).real(), gr.line_element(t * phase).real(), 1e-9);
  }
}

TEST(SphereMetric, FreeParticleFullMode) {
  CVec c(2);
  c << 0.8, 0.6;
  const SphereMetric g = sphere_metric(EvolvedBasis::free_particle(1.0, 0.4), AmplitudeState::make(c));
  EXPECT_TRUE(g.has_g_bar());
  EXPECT_LT(g.g_bar.cwiseAbs().maxCoeff(), 1e-9);
}

TEST(DiagonalMode, NormIntegral) {
  for (int n = 0; n <= 2; ++n) {
    for (double t : {0.3, 0.9}) {
      const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, t);
      const double want = 2 * kPi * std::sin(t);
      EXPECT_NEAR(diagonal_In_norm(b, n).value / want, 1.0, 1e-6) << n << " " << t;
    }
  }
}

TEST(DiagonalMode, NormScalesWithLambda) {
  const EvolvedBasis b = EvolvedBasis::oscillator(2.0, 1.5, 0.5);
  const double l2 = 2.0 * 1.5;
  EXPECT_NEAR(diagonal_In_norm(b, 1).value / (2 * kPi * std::sin(0.75) / l2), 1.0, 1e-6);
}

TEST(DiagonalMode, ModeOnlyForOscillator) {
  CVec c(1);
  c << 1.0;
  EXPECT_THROW(sphere_metric(EvolvedBasis::free_particle(1.0, 0.4), AmplitudeState::make(c), SphereMode::paper_diagonal),
               Error);
}

TEST(DiagonalMode, CausticRejected) {
  try {
    diagonal_In(EvolvedBasis::oscillator(1.0, 1.0, 0.0), 0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PropagatorCaustic);
  }
}

TEST(DiagonalMode, DiagonalProbabilityIsNormalized) {
  CVec c(2);
  c << 0.8, 0.6;
  const AmplitudeState s = AmplitudeState::make(c);
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.4);
  const QuadratureSpec spec = b.default_spec();
  const double total =
      integrate([&](double x) { return probability_paper_diagonal(b, s, x); }, b.support(s.labels, spec.scheme), spec).value;
  EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(Truncation, EmptyModesLeaveBlockUnchanged) {
  CVec c(2);
  c << 0.8, 0.6;
  const EvolvedBasis b = EvolvedBasis::oscillator(1.0, 1.0, 0.4);
  const TruncationReport r = truncation_report(b, AmplitudeState::make(c), b.default_spec());
  EXPECT_LT(r.common_block_change, 1e-8);
}
