#pragma once

#include "sgens/constrain.hpp"
#include "sgens/lattice.hpp"

#include <span>
#include <vector>

namespace sgens {

/// Normalized marginal density of <q>, proportional to exp(-beta V_eff(q)).
/// Between table nodes V_eff is interpolated linearly; outside the table the
/// density is zero.
struct MarginalDensity {
  double beta = 0.0;
  double v_min = 0.0;
  double normalization = 1.0;  ///< trapezoid integral of exp(-beta (V - v_min))
  std::vector<double> q;
  std::vector<double> v_eff;
  std::vector<double> density;  ///< at the nodes

  double operator()(double x) const;
  /// Probability mass in [a, b] (trapezoid on nodes plus interpolated ends).
  double mass(double a, double b) const;
};

MarginalDensity sg_marginal_q(const EffectivePotentialTable& table, double beta);

struct QMoments {
  double mean = 0.0;
  double variance = 0.0;
};

QMoments q_moments(const MarginalDensity& density);

struct ThermalCurve {
  std::vector<double> beta;
  std::vector<double> rescaled_temperature;  ///< 2 / (beta (E2 - E1))
  std::vector<double> mean_q;
  std::vector<double> delta_q;
  std::vector<double> delta_q_over_d;
  std::vector<double> delta_p;  ///< sqrt(m / beta), from the Gaussian p-marginal
};

/// Dispersion of <q> at each beta. Unless the table has bounded support,
/// the density at both table ends must be below 1e-8 of its peak.
ThermalCurve fluctuation_curve(const EffectivePotentialTable& table, std::span<const double> betas);

/// `count` log-spaced rescaled temperatures in [t_min, t_max] converted to beta.
std::vector<double> betas_for_rescaled_temperatures(double e1, double e2, double t_min,
                                                    double t_max, std::size_t count);

/// Joint SG density at low temperature: marginal(q) times the Gaussian in p.
double sg_joint_density(const MarginalDensity& marginal, double mass, double q, double p);

/// Histogram of sampled <q> values against the probability the marginal
/// assigns to the same bins. Bins span the sample range clipped to the table.
struct HistogramComparison {
  std::vector<double> edges;      ///< bins + 1 ascending edges
  std::vector<double> empirical;  ///< fraction of samples per bin
  std::vector<double> expected;   ///< marginal mass per bin, renormalized over the bins
  double total_variation = 0.0;
};

HistogramComparison compare_histogram(std::span<const double> samples, const MarginalDensity& marginal,
                                      std::size_t bins);

struct CoverageOptions {
  double tail_ratio = 1e-8;
  double spacing_over_d = 1.0 / 40.0;
  double wall_margin = 3.0;  ///< spatial grid extends this far beyond the table
  int max_extensions = 8;
  unsigned threads = 1;
  RootOptions root{};
};

/// Exact V_eff table wide enough that exp(-beta_min V_eff) has decayed below
/// the tail ratio at both ends. Widens the spatial grid (same spacing) when
/// the table outgrows it.
EffectivePotentialTable covering_table(const ModelParams& model, const GridSpec& base,
                                       double beta_min, const CoverageOptions& options = {});

/// Nodes of `table` inside [lo, hi], flagged as bounded support.
EffectivePotentialTable restrict_table(const EffectivePotentialTable& table, double lo, double hi);

// ---------------------------------------------------------------------------
// Canonical ensemble comparator

struct CanonicalAtom {
  double energy = 0.0;
  double weight = 0.0;
  double q = 0.0;  ///< <phi_k, q phi_k>
};

struct CanonicalAtoms {
  double beta = 0.0;
  std::vector<CanonicalAtom> atoms;
  double log_z = 0.0;           ///< log sum_k exp(-beta E_k) over included levels
  double truncation_weight = 0.0;  ///< exp(-beta (E_kmax - E_1))

  double mean_q() const;
  double delta_q() const;
};

CanonicalAtoms canonical_atoms(const ModelParams& model, const Grid& grid, double beta,
                               std::size_t k_max, const EigenOptions& options = {});

}  // namespace sgens
