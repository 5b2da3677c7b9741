#include <sgens/errors.hpp>
#include <sgens/sgmc.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace sgens;

namespace {

const ModelParams kHarmonic{1.0, 1.0, Harmonic{1.0}};
const GridSpec kWideGrid{-10.0, 10.0, 4001};

TruncatedModel two_level(double e1, double e2, double q11, double q12, double q22, double a12) {
  return make_truncated_model({e1, e2}, {q11, q12, q12, q22}, {0.0, a12, -a12, 0.0});
}

ChainConfig quick(std::size_t steps, std::uint64_t seed = 11) {
  ChainConfig c;
  c.chains = 4;
  c.steps = steps;
  c.burn_in = steps / 10;
  c.seed = seed;
  return c;
}

bool within(const Estimate& e, double expected, double sigmas = 3.0) {
  return std::abs(e.value - expected) <= sigmas * e.error;
}

// Exact Var<q> for the oscillator truncated to its lowest N levels at
// beta = 2, from tests/oracles/truncated_harmonic.py.
constexpr double kTruncatedVarQ2 = 0.1565176427;
constexpr double kTruncatedVarQ4 = 0.2280963828;
constexpr double kTruncatedVarQ16 = 0.2716067771;
constexpr double kTruncatedVarQ24 = 0.2758053444;

}  // namespace

TEST(TruncatedModel, HarmonicLadderElements) {
  const auto tm = build_truncated_model(kHarmonic, make_grid(kWideGrid), 4);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(tm.energies[k], static_cast<double>(k) + 0.5, 5e-5);
    for (std::size_t l = 0; l < 4; ++l) {
      const bool adjacent = (k + 1 == l) || (l + 1 == k);
      const double expect = adjacent ? std::sqrt((static_cast<double>(std::min(k, l)) + 1.0) / 2.0) : 0.0;
      // O(dx^2) discretization, larger for the central-difference derivative
      EXPECT_NEAR(std::abs(tm.q(k, l)), expect, 1e-5) << k << "," << l;
      EXPECT_NEAR(std::abs(tm.a(k, l)), expect, 5e-5) << k << "," << l;
      EXPECT_EQ(tm.a(k, l), -tm.a(l, k));
      EXPECT_EQ(tm.q(k, l), tm.q(l, k));
    }
  }
}

TEST(TruncatedModel, DoubleWellParitySelection) {
  const Grid g = make_grid({});
  const ModelParams model{0.2, 1.0, QuarticDoubleWell{1.0, 1.5}};
  const auto tm = build_truncated_model(model, g, 8);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(tm.q(k, k)), 1e-10);

  // The basis diagonalizes H.
  const auto op = assemble_hamiltonian(model, g);
  const auto pairs = lowest_eigenpairs(op, 3);
  std::vector<double> h_phi(g.size());
  op.apply(pairs[1].wavefunction, h_phi);
  EXPECT_LT(std::abs(inner(g, pairs[0].wavefunction, h_phi)), 1e-8);
  EXPECT_LT(std::abs(inner(g, pairs[2].wavefunction, h_phi)), 1e-8);
}

TEST(TruncatedModel, Validation) {
  EXPECT_THROW(make_truncated_model({1.0}, {0.0}, {0.0}), ConfigError);
  EXPECT_THROW(make_truncated_model({2.0, 1.0}, {0, 1, 1, 0}, {0, 0, 0, 0}), ConfigError);
  EXPECT_THROW(make_truncated_model({1.0, 2.0}, {0, 1, 0.5, 0}, {0, 0, 0, 0}), ConfigError);
  EXPECT_THROW(make_truncated_model({1.0, 2.0}, {0, 1, 1, 0}, {0, 1, 1, 0}), ConfigError);
  EXPECT_THROW(make_truncated_model({1.0, NAN}, {0, 1, 1, 0}, {0, 0, 0, 0}), ConfigError);
  EXPECT_THROW(build_truncated_model(kHarmonic, make_grid(kWideGrid), 1), ConfigError);
}

TEST(Observables, ExpectationsOfBasisStates) {
  const auto tm = two_level(1.0, 3.0, 0.2, 1.0, -0.2, 0.5);
  const Coefficients c1{{1.0, 0.0}, {0.0, 0.0}};
  EXPECT_DOUBLE_EQ(energy_of(tm, c1), 1.0);
  EXPECT_DOUBLE_EQ(position_of(tm, c1), 0.2);
  const double s = std::sqrt(0.5);
  const Coefficients plus{{s, 0.0}, {s, 0.0}};
  EXPECT_NEAR(position_of(tm, plus), 1.0, 1e-15);
  EXPECT_NEAR(momentum_of(tm, plus), 0.0, 1e-15);
  const Coefficients twisted{{s, 0.0}, {0.0, s}};
  EXPECT_NEAR(std::abs(momentum_of(tm, twisted)), 0.5, 1e-15);
}

TEST(Oracle, UniformLimit) {
  const auto m = oracle_two_level(1.0, 2.0, {0.0, 0.8, 0.0}, 0.3, 0.0);
  EXPECT_NEAR(m.var_q, 0.64 / 3.0, 1e-10);
  EXPECT_NEAR(m.mean_q, 0.0, 1e-12);
  EXPECT_NEAR(m.var_p, 0.09 / 3.0, 1e-10);
}

TEST(Oracle, DegenerateLevelsAreTemperatureIndependent) {
  const auto a = oracle_two_level(1.0, 1.0, {0.1, 0.8, -0.3}, 0.3, 0.0);
  const auto b = oracle_two_level(1.0, 1.0, {0.1, 0.8, -0.3}, 0.3, 50.0);
  EXPECT_NEAR(a.mean_q, b.mean_q, 1e-10);
  EXPECT_NEAR(a.var_q, b.var_q, 1e-10);
}

TEST(Oracle, GroundStateLimit) {
  const auto m = oracle_two_level(0.0, 1.0, {0.25, 0.8, -0.3}, 0.3, 1e6);
  EXPECT_NEAR(m.mean_q, 0.25, 1e-5);
  EXPECT_NEAR(m.var_q, 0.0, 1e-5);
}

TEST(Oracle, AgreesWithTruncatedOscillatorFormula) {
  const auto tm = build_truncated_model(kHarmonic, make_grid(kWideGrid), 2);
  EXPECT_NEAR(oracle_two_level(tm, 2.0).var_q, kTruncatedVarQ2, 2e-6);
}

TEST(Sampler, UniformSphereAtInfiniteTemperature) {
  const auto tm = two_level(1.0, 2.0, 0.0, 1.0, 0.0, 0.0);
  const auto run = sample_sg(tm, 0.0, quick(50000));
  EXPECT_EQ(run.acceptance_rate, 1.0);
  const auto mom = sample_moments(run);
  EXPECT_TRUE(within(mom.var_q, 1.0 / 3.0)) << mom.var_q.value << " +- " << mom.var_q.error;
}

class TwoLevelAgreement : public ::testing::TestWithParam<double> {};

TEST_P(TwoLevelAgreement, MomentsWithinThreeSigma) {
  const double beta = GetParam();
  const auto tm = two_level(0.5, 1.7, 0.1, 0.9, -0.2, 0.6);
  const auto exact = oracle_two_level(tm, beta);
  const auto mom = sample_moments(sample_sg(tm, beta, quick(100000, 5)));
  EXPECT_TRUE(within(mom.mean_q, exact.mean_q)) << mom.mean_q.value << " vs " << exact.mean_q;
  EXPECT_TRUE(within(mom.var_q, exact.var_q)) << mom.var_q.value << " vs " << exact.var_q;
  EXPECT_TRUE(within(mom.mean_p, exact.mean_p)) << mom.mean_p.value << " vs " << exact.mean_p;
  EXPECT_TRUE(within(mom.var_p, exact.var_p)) << mom.var_p.value << " vs " << exact.var_p;
}

INSTANTIATE_TEST_SUITE_P(Betas, TwoLevelAgreement, ::testing::Values(0.0, 1.0, 10.0));

TEST(Sampler, TruncatedOscillatorMatchesExactTruncatedLaw) {
  const auto tm = build_truncated_model(kHarmonic, make_grid(kWideGrid), 4);
  const auto mom = sample_moments(sample_sg(tm, 2.0, quick(100000, 3)));
  EXPECT_TRUE(within(mom.var_q, kTruncatedVarQ4)) << mom.var_q.value << " +- " << mom.var_q.error;
  EXPECT_TRUE(within(mom.mean_q, 0.0));
}

TEST(Sampler, TruncationDependenceFollowsOracle) {
  // Each basis size reproduces its own exact truncated variance; the oracle
  // itself moves by 0.0042 between N = 16 and N = 24.
  const Grid g = make_grid(kWideGrid);
  const auto m16 = sample_moments(sample_sg(build_truncated_model(kHarmonic, g, 16), 2.0, quick(200000, 16)));
  const auto m24 = sample_moments(sample_sg(build_truncated_model(kHarmonic, g, 24), 2.0, quick(200000, 24)));
  EXPECT_TRUE(within(m16.var_q, kTruncatedVarQ16)) << m16.var_q.value << " +- " << m16.var_q.error;
  EXPECT_TRUE(within(m24.var_q, kTruncatedVarQ24)) << m24.var_q.value << " +- " << m24.var_q.error;
  EXPECT_GT(kTruncatedVarQ24 - kTruncatedVarQ16, 0.004);
}

TEST(Sampler, ReproducibleAndThreadIndependent) {
  const auto tm = two_level(0.5, 1.7, 0.1, 0.9, -0.2, 0.6);
  auto cfg = quick(5000, 99);
  const auto a = sample_sg(tm, 1.0, cfg);
  const auto b = sample_sg(tm, 1.0, cfg);
  cfg.threads = 3;
  const auto c = sample_sg(tm, 1.0, cfg);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].q, b.samples[i].q);
    EXPECT_EQ(a.samples[i].p, c.samples[i].p);
  }
  cfg.seed = 100;
  const auto d = sample_sg(tm, 1.0, cfg);
  EXPECT_NE(a.samples.back().q, d.samples.back().q);
}

TEST(Sampler, CoefficientsStayOnTheSphere) {
  const auto tm = build_truncated_model(kHarmonic, make_grid(kWideGrid), 6);
  auto cfg = quick(2000);
  cfg.retain_coefficients = true;
  const auto run = sample_sg(tm, 1.0, cfg);
  ASSERT_EQ(run.coefficients.size(), run.samples.size());
  for (const auto& c : run.coefficients) {
    double n = 0.0;
    for (const auto& v : c) n += std::norm(v);
    EXPECT_NEAR(n, 1.0, 1e-12);
  }
}

TEST(Sampler, AcceptanceTunedIntoWindow) {
  const auto tm = build_truncated_model(kHarmonic, make_grid(kWideGrid), 8);
  const auto run = sample_sg(tm, 2.0, quick(20000));
  EXPECT_GT(run.acceptance_rate, 0.25);
  EXPECT_LT(run.acceptance_rate, 0.55);
}

TEST(Sampler, RejectsNegativeBeta) {
  const auto tm = two_level(0.0, 1.0, 0.0, 1.0, 0.0, 0.0);
  EXPECT_THROW(sample_sg(tm, -1.0, quick(100)), ConfigError);
}

TEST(Flow, IdentityAndInvariance) {
  const auto tm = build_truncated_model(kHarmonic, make_grid(kWideGrid), 8);
  auto cfg = quick(50000, 8);
  cfg.retain_coefficients = true;
  const auto run = sample_sg(tm, 2.0, cfg);

  const auto zero = unitary_flow_check(run, tm, 0.0);
  EXPECT_TRUE(zero.passed);
  for (const auto& r : zero.rows) EXPECT_EQ(r.original, r.evolved);

  for (double t : {0.4, 1.9, 7.0}) {
    const auto rep = unitary_flow_check(run, tm, t);
    EXPECT_TRUE(rep.passed) << "t = " << t;
    EXPECT_LT(rep.max_energy_change, 1e-12);
    EXPECT_LT(rep.max_norm_deviation, 1e-12);
  }
}

TEST(Flow, NeedsRetainedCoefficients) {
  const auto tm = two_level(0.0, 1.0, 0.0, 1.0, 0.0, 0.0);
  const auto run = sample_sg(tm, 1.0, quick(1000));
  EXPECT_THROW(unitary_flow_check(run, tm, 1.0), UsageError);
}
