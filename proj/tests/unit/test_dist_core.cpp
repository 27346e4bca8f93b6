#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdist/error.hpp"
#include "qdist/families.hpp"
#include "qdist/hermite.hpp"
#include "qdist/quadrature.hpp"

using namespace qdist;

namespace {

constexpr double kPi = std::numbers::pi;

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(Quadrature, StandardGaussianIntegratesToOne) {
  auto f = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); };
  EXPECT_NEAR(integrate(f, Support::real_line(), QuadratureSpec::adaptive()).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate(f, Support::real_line(0.0, std::sqrt(2.0)), QuadratureSpec::gauss_hermite(60)).value, 1.0,
              1e-12);
}

TEST(Quadrature, CircleOrthogonality) {
  for (int k = -2; k <= 2; ++k) {
    for (int l = -2; l <= 2; ++l) {
      auto f = [&](double x) { return std::exp(std::complex<double>(0.0, x * (k - l))) / (2.0 * kPi); };
      const auto r = integrate(f, Support::periodic(0.0, 2.0 * kPi), QuadratureSpec::periodic_trapezoid());
      EXPECT_NEAR(std::abs(r.value - std::complex<double>(k == l ? 1.0 : 0.0)), 0.0, 1e-13) << k << "," << l;
    }
  }
}

TEST(Quadrature, OscillatorSecondMoment) {
  // <x^2> = hbar / (2 m omega) for the ground state.
  const ParametricFamily fam = ho_eigenstate_family(0);
  const Vec th = v2(1.0, 1.0);
  auto f = [&](double x) { return x * x * fam.density(x, th); };
  EXPECT_NEAR(integrate(f, fam.support(th), QuadratureSpec::adaptive()).value, 0.5, 1e-10);
}

TEST(Quadrature, InvalidSpecRejected) {
  QuadratureSpec s;
  s.abs_tol = -1.0;
  try {
    s.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Quadrature, BudgetExhaustionIsNonConvergent) {
  QuadratureSpec s = QuadratureSpec::adaptive(1e-14, 1e-14);
  s.max_subdivisions = 2;
  auto f = [](double x) { return std::sin(200.0 * x) * std::sin(200.0 * x); };
  try {
    integrate(f, Support::interval(0.0, 10.0), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergent);
  }
}

TEST(Quadrature, NonFiniteSampleFails) {
  auto f = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  try {
    integrate(f, Support::interval(0.0, 1.0), QuadratureSpec::adaptive());
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::QuadratureFailure || e.kind() == ErrorKind::NonConvergent);
  }
}

TEST(Hermite, RecurrenceMatchesExplicitPolynomials) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng);
    const double want[5] = {1.0, 2 * x, 4 * x * x - 2, 8 * x * x * x - 12 * x,
                            16 * std::pow(x, 4) - 48 * x * x + 12};
    for (int n = 0; n <= 4; ++n) {
      EXPECT_NEAR(hermite_h(n, x), want[n], 1e-12 * std::max(1.0, std::abs(want[n])));
    }
  }
}

TEST(Hermite, FunctionsAreOrthonormal) {
  const GaussHermiteRule& r = gauss_hermite_rule(80);
  for (int m = 0; m <= 10; ++m) {
    for (int n = 0; n <= 10; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const auto phi = hermite_functions(10, r.nodes[i]);
        s += std::exp(r.log_scaled_weights[i]) * phi[m] * phi[n];
      }
      EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Hermite, RuleIntegratesMonomials) {
  const GaussHermiteRule& r = gauss_hermite_rule(20);
  double s0 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double x = r.nodes[i];
    s0 += r.weights[i];
    s2 += r.weights[i] * x * x;
    s4 += r.weights[i] * x * x * x * x;
  }
  EXPECT_NEAR(s0, std::sqrt(kPi), 1e-13);
  EXPECT_NEAR(s2, std::sqrt(kPi) / 2.0, 1e-13);
  EXPECT_NEAR(s4, 3.0 * std::sqrt(kPi) / 4.0, 1e-13);
}

TEST(GaussianFamily, PeakLogDensity) {
  const ParametricFamily g = gaussian_family();
  const Vec th = v2(1.7, -0.4);
  EXPECT_NEAR(g.log_density(-0.4, th), -std::log(std::sqrt(2.0 * kPi) * 1.7), 1e-14);
}

TEST(GaussianFamily, MeanDerivative) {
  const ParametricFamily g = gaussian_family();
  EXPECT_NEAR(g.grad_log_density(1.0, v2(1.0, 0.0))[1], 1.0, 1e-14);
}

TEST(GaussianFamily, Normalized) {
  EXPECT_NEAR(total_probability(gaussian_family(), v2(2.5, -3.0)).value, 1.0, 1e-10);
}

TEST(GaussianFamily, RejectsNonPositiveSigma) {
  EXPECT_FALSE(gaussian_family().in_domain(v2(0.0, 1.0)));
  try {
    gaussian_family().require_in_domain(v2(-1.0, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfDomain);
  }
}

TEST(OscillatorFamily, GroundStatePeak) {
  EXPECT_NEAR(ho_eigenstate_family(0).density(0.0, v2(1.0, 1.0)), 1.0 / std::sqrt(kPi), 1e-14);
}

TEST(OscillatorFamily, OddStateNode) {
  EXPECT_EQ(ho_eigenstate_family(1).density(0.0, v2(1.0, 1.0)), 0.0);
}

TEST(OscillatorFamily, NormalizedLevels) {
  for (int n = 0; n <= 5; ++n) {
    EXPECT_NEAR(total_probability(ho_eigenstate_family(n), v2(1.3, 0.8)).value, 1.0, 1e-9) << n;
  }
}

TEST(OscillatorFamily, HalfExponentIsNotNormalized) {
  auto f = [](double x) { return ho_density_half_exponent(0, x, 1.0, 1.0); };
  EXPECT_NEAR(integrate(f, Support::real_line(), QuadratureSpec::adaptive()).value, std::sqrt(2.0), 1e-9);
}

TEST(OscillatorFamily, IndexLimit) {
  try {
    ho_eigenstate_family(31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexTooLarge);
  }
}

TEST(Families, NormalizationAtRandomPoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.3, 3.0);
  std::uniform_real_distribution<double> mean(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    EXPECT_NEAR(total_probability(gaussian_family(), v2(pos(rng), mean(rng))).value, 1.0, 1e-8);
    for (int n = 0; n <= 3; ++n) {
      EXPECT_NEAR(total_probability(ho_eigenstate_family(n), v2(pos(rng), pos(rng))).value, 1.0, 1e-8);
    }
  }
}

TEST(Families, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  std::uniform_real_distribution<double> xs(-2.0, 2.0);
  const std::vector<ParametricFamily> fams = {gaussian_family(), ho_eigenstate_family(0), ho_eigenstate_family(2)};
  for (const ParametricFamily& f : fams) {
    for (int i = 0; i < 10; ++i) {
      const Vec th = v2(pos(rng), pos(rng));
      const double x = xs(rng);
      if (f.density(x, th) < 1e-6) continue;
      const Vec g = f.grad_log_density(x, th);
      for (int a = 0; a < 2; ++a) {
        const double h = 1e-3 * std::max(1.0, std::abs(th[a]));
        auto at = [&](double d) {
          Vec t = th;
          t[a] += d;
          return f.log_density(x, t);
        };
        const double fd = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
        EXPECT_NEAR(g[a], fd, 1e-6 * std::max(1.0, std::abs(fd))) << f.name << " a=" << a;
      }
    }
  }
}
