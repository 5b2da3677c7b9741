#include <sgens/errors.hpp>
#include <sgens/thermal.hpp>
#include <sgens/twostate.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace sgens;

namespace {

ModelParams double_well(double mass) { return {mass, 1.0, QuarticDoubleWell{1.0, 1.5}}; }

/// E1 = -1, E2 = 1, d = 1: rescaled temperature is 1 / beta.
EffectivePotentialTable unit_two_state(std::size_t n) {
  TwoStateModel ts;
  ts.e1 = -1.0;
  ts.e2 = 1.0;
  ts.d = 1.0;
  return two_state_table(ts, n);
}

const EffectivePotentialTable& harmonic_table() {
  static const EffectivePotentialTable t = [] {
    std::vector<double> q;
    for (int i = -60; i <= 60; ++i) q.push_back(0.05 * i);
    return effective_potential({1.0, 1.0, Harmonic{1.0}}, make_grid({-10.0, 10.0, 4001}), q);
  }();
  return t;
}

}  // namespace

TEST(Marginal, NormalizedAndEven) {
  const auto m = sg_marginal_q(unit_two_state(201), 3.0);
  // Normalized by node trapezoid; mass() integrates the interpolant finer.
  EXPECT_NEAR(m.mass(-1.0, 1.0), 1.0, 1e-4);
  for (double x : {0.1, 0.45, 0.99}) EXPECT_NEAR(m(x), m(-x), 1e-12);
  EXPECT_EQ(m(1.5), 0.0);
}

TEST(Marginal, HighTemperatureIsUniform) {
  const auto m = sg_marginal_q(unit_two_state(201), 1e-9);
  for (double x : {-0.9, -0.3, 0.0, 0.7}) EXPECT_NEAR(m(x), 0.5, 1e-8);
}

TEST(Marginal, HarmonicGaussian) {
  const auto m = sg_marginal_q(harmonic_table(), 2.0);
  const QMoments mom = q_moments(m);
  EXPECT_NEAR(mom.mean, 0.0, 1e-8);
  // Linear interpolation of V between nodes h = 0.05 apart biases the
  // variance by O(h^2).
  EXPECT_NEAR(mom.variance, 0.5, 2e-3);
}

TEST(Marginal, EmptyTableRejected) {
  EXPECT_THROW(sg_marginal_q(EffectivePotentialTable{}, 1.0), UsageError);
  EXPECT_THROW(sg_marginal_q(unit_two_state(11), -1.0), UsageError);
}

TEST(Fluctuation, TwoStateAsymptotes) {
  const auto table = unit_two_state(2001);
  const double betas[] = {1.0 / 100.0, 1.0 / 0.01};
  const auto curve = fluctuation_curve(table, betas);
  EXPECT_NEAR(curve.rescaled_temperature[0], 100.0, 1e-9);
  EXPECT_NEAR(curve.delta_q_over_d[0], 1.0 / std::sqrt(3.0), 1e-3);
  EXPECT_NEAR(curve.delta_q_over_d[1] / 0.1, 1.0, 0.05);
  EXPECT_NEAR(curve.delta_p[0], std::sqrt(100.0 * table.meta.model.mass), 1e-12);
}

TEST(Fluctuation, MonotoneAndCenteredOnTemperatureGrid) {
  const auto table = unit_two_state(2001);
  const auto betas = betas_for_rescaled_temperatures(-1.0, 1.0, 1e-2, 1e2, 60);
  ASSERT_EQ(betas.size(), 60u);
  const auto curve = fluctuation_curve(table, betas);
  EXPECT_NEAR(curve.rescaled_temperature.front(), 1e-2, 1e-12);
  EXPECT_NEAR(curve.rescaled_temperature.back(), 1e2, 1e-9);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    EXPECT_NEAR(curve.mean_q[i], 0.0, 1e-8);
    if (i) EXPECT_GE(curve.delta_q[i], curve.delta_q[i - 1]);
  }
}

TEST(Fluctuation, QuadratureSelfConsistency) {
  const auto betas = betas_for_rescaled_temperatures(-1.0, 1.0, 1e-2, 1e2, 60);
  const auto coarse = fluctuation_curve(unit_two_state(2001), betas);
  const auto fine = fluctuation_curve(unit_two_state(4001), betas);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    EXPECT_NEAR(fine.delta_q[i] / coarse.delta_q[i], 1.0, 1e-4) << "T_r = " << coarse.rescaled_temperature[i];
  }
}

TEST(Fluctuation, CoverageErrorNamesBeta) {
  // +-3 around a unit-curvature well is far too narrow at beta = 0.05.
  const auto& table = harmonic_table();
  const double betas[] = {50.0, 0.05};
  try {
    fluctuation_curve(table, betas);
    FAIL() << "expected CoverageError";
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.beta(), 0.05);
  }
}

TEST(Fluctuation, JointDensityFactorizes) {
  const auto m = sg_marginal_q(harmonic_table(), 2.0);
  for (double q : {-0.5, 0.0, 0.8}) {
    for (double p : {-1.0, 0.3}) {
      const double gauss = std::sqrt(2.0 / (2.0 * M_PI)) * std::exp(-2.0 * p * p / 2.0);
      EXPECT_DOUBLE_EQ(sg_joint_density(m, 1.0, q, p), m(q) * gauss);
    }
  }
}

TEST(Coverage, CoveringTableSatisfiesTailCriterion) {
  const ModelParams model = double_well(1.0);
  const double beta = 2.0 / (10.0 * 0.0418222);  // T_r ~ 10
  const auto table = covering_table(model, GridSpec{}, beta);
  EXPECT_FALSE(table.bounded_support);
  EXPECT_LT(table.q.front(), -table.meta.d);
  EXPECT_GT(table.q.back(), table.meta.d);
  EXPECT_NEAR(table.q.front(), -table.q.back(), 1e-12);
  const double b[] = {beta};
  EXPECT_NO_THROW(fluctuation_curve(table, b));

  const auto inner = restrict_table(table, -table.meta.d, table.meta.d);
  EXPECT_TRUE(inner.bounded_support);
  EXPECT_GE(inner.q.front(), -table.meta.d * (1.0 + 1e-12));
  EXPECT_LE(inner.q.back(), table.meta.d * (1.0 + 1e-12));
}

TEST(Canonical, SymmetricWellAtomsSitAtOrigin) {
  const Grid g = make_grid({});
  for (double beta : {0.5, 1.0, 10.0}) {
    const auto atoms = canonical_atoms(double_well(0.2), g, beta, 30);
    for (const auto& a : atoms.atoms) EXPECT_LT(std::abs(a.q), 1e-8);
    EXPECT_LT(atoms.delta_q(), 1e-8);
  }
}

TEST(Canonical, HarmonicWeightsAreGeometric) {
  const auto atoms = canonical_atoms({1.0, 1.0, Harmonic{1.0}}, make_grid({-10.0, 10.0, 4001}), 1.0, 30);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_NEAR(atoms.atoms[k].weight, (1.0 - std::exp(-1.0)) * std::exp(-static_cast<double>(k)), 1e-5);
  }
}

TEST(Canonical, TiltedWellFavoursDeeperSide) {
  const ModelParams model{1.0, 1.0, Tilted{QuarticDoubleWell{1.0, 1.5}, 0.1}};
  const auto atoms = canonical_atoms(model, make_grid({}), 20.0, 12);
  std::size_t best = 0;
  for (std::size_t k = 1; k < atoms.atoms.size(); ++k) {
    if (atoms.atoms[k].weight > atoms.atoms[best].weight) best = k;
  }
  EXPECT_NEAR(atoms.atoms[best].q, -1.5, 0.2);
}

TEST(Canonical, TruncationCheck) {
  EXPECT_THROW(canonical_atoms(double_well(1.0), make_grid({}), 0.1, 3), TruncationError);
}

TEST(Canonical, SGDispersionExceedsCanonical) {
  const ModelParams model = double_well(0.2);
  for (double beta : {0.5, 2.0}) {
    const auto atoms = canonical_atoms(model, make_grid({}), beta, 40);
    const auto table = covering_table(model, GridSpec{}, beta);
    const double b[] = {beta};
    const auto sg = fluctuation_curve(table, b);
    EXPECT_LT(atoms.delta_q(), 1e-8);
    EXPECT_GT(sg.delta_q[0], 0.0);
  }
}

TEST(Histogram, MatchesWhenSamplesFollowTheMarginal) {
  const auto m = sg_marginal_q(unit_two_state(401), 1e-9);
  std::vector<double> samples;
  for (int i = 0; i < 100000; ++i) samples.push_back(-1.0 + 2.0 * (i + 0.5) / 100000.0);
  const auto h = compare_histogram(samples, m, 20);
  EXPECT_EQ(h.edges.size(), 21u);
  EXPECT_LT(h.total_variation, 1e-3);

  std::vector<double> skewed(samples.begin(), samples.begin() + 50000);
  EXPECT_NEAR(compare_histogram(skewed, m, 20).total_variation, 0.0, 1e-3);  // bins follow the samples
  skewed.push_back(1.0);
  EXPECT_GT(compare_histogram(skewed, m, 20).total_variation, 0.4);
}
