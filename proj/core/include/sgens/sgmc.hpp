#pragma once

#include "sgens/lattice.hpp"
#include "sgens/spectra.hpp"
#include "sgens/statistics.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace sgens {

using Coefficients = std::vector<std::complex<double>>;

/// H, q and p restricted to span{phi_1..phi_N} of the eigenbasis. Matrices
/// are row-major N x N; the momentum matrix is stored as the real
/// antisymmetric A with P = -i A.
struct TruncatedModel {
  std::size_t size = 0;
  std::vector<double> energies;
  std::vector<double> position;
  std::vector<double> momentum;
  double hbar = 1.0;

  double q(std::size_t k, std::size_t l) const { return position[k * size + l]; }
  double a(std::size_t k, std::size_t l) const { return momentum[k * size + l]; }
};

/// Checks shapes, symmetry of Q, antisymmetry of A and ascending energies.
TruncatedModel make_truncated_model(std::vector<double> energies, std::vector<double> position,
                                    std::vector<double> momentum, double hbar = 1.0);

TruncatedModel build_truncated_model(const ModelParams& model, const Grid& grid, std::size_t n,
                                     const EigenOptions& options = {});

/// c^dagger diag(E) c
double energy_of(const TruncatedModel& tm, std::span<const std::complex<double>> c);
/// c^dagger Q c
double position_of(const TruncatedModel& tm, std::span<const std::complex<double>> c);
/// c^dagger P c = Im(c^dagger A c)
double momentum_of(const TruncatedModel& tm, std::span<const std::complex<double>> c);

struct ChainConfig {
  std::size_t chains = 4;
  std::size_t steps = 200000;  ///< retained samples per chain
  std::size_t burn_in = 20000;
  std::size_t thin = 1;
  std::uint64_t seed = 20060101;
  double initial_step = 0.1;
  std::size_t tune_interval = 500;
  double max_step = 4.0;
  bool retain_coefficients = false;
  unsigned threads = 1;
};

struct SGSample {
  double q = 0.0;
  double p = 0.0;
  double energy = 0.0;
  std::uint32_t chain = 0;
  std::uint64_t step = 0;
};

struct SGSampleRun {
  double beta = 0.0;
  std::size_t chain_count = 0;
  std::size_t steps_per_chain = 0;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  std::vector<SGSample> samples;  ///< chain-major, steps_per_chain per chain
  std::vector<Coefficients> coefficients;  ///< aligned with samples when retained
  double acceptance_rate = 0.0;
  std::vector<double> chain_acceptance;
  std::vector<double> step_size;  ///< tuned proposal width per chain
  double integrated_autocorrelation_time = 1.0;  ///< of q, averaged over chains
};

/// Random-walk Metropolis on the unit sphere of C^N with target
/// exp(-beta sum_k |c_k|^2 E_k). Proposal: normalize(c + sigma xi), xi
/// standard complex Gaussian; sigma is tuned during burn-in towards an
/// acceptance rate in [0.3, 0.5].
SGSampleRun sample_sg(const TruncatedModel& tm, double beta, const ChainConfig& config);

struct SampleMoments {
  Estimate mean_q;
  Estimate var_q;
  Estimate mean_p;
  Estimate var_p;
};

SampleMoments sample_moments(const SGSampleRun& run, std::size_t batches_per_chain = 20);

/// Per-chain views of one observable of a run.
std::vector<std::vector<double>> chain_series(const SGSampleRun& run, double SGSample::*field);

struct TwoLevelMoments {
  double mean_q = 0.0;
  double var_q = 0.0;
  double mean_p = 0.0;
  double var_p = 0.0;
};

/// Exact moments of (q, p) under the SG measure of a two-level model, by
/// deterministic quadrature over |c_2|^2 (Gauss-Legendre panels) and the
/// relative phase (periodic trapezoid). `q` = {Q11, Q12, Q22}; `a12` is the
/// momentum generator element (P12 = -i a12).
TwoLevelMoments oracle_two_level(double e1, double e2, std::array<double, 3> q, double a12,
                                 double beta);
TwoLevelMoments oracle_two_level(const TruncatedModel& tm, double beta);

struct FlowRow {
  std::string name;
  double original = 0.0;
  double evolved = 0.0;
  double error = 0.0;  ///< combined standard error of the difference
  bool pass = false;
};

struct FlowReport {
  double t = 0.0;
  std::vector<FlowRow> rows;
  double max_energy_change = 0.0;
  double max_norm_deviation = 0.0;
  bool passed = false;
};

/// Evolves every retained coefficient vector by c_k -> exp(-i E_k t / hbar) c_k
/// and compares the first four raw moments of q and p before and after,
/// within `sigmas` combined standard errors.
FlowReport unitary_flow_check(const SGSampleRun& run, const TruncatedModel& tm, double t,
                              double sigmas = 3.0);

}  // namespace sgens
