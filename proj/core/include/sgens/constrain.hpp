#pragma once

#include "sgens/lattice.hpp"
#include "sgens/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sgens {

/// Ground state of H + lambda q.
struct TiltedGroundState {
  double lambda = 0.0;
  double energy = 0.0;
  RealWave wavefunction;
  double mean_position = 0.0;  ///< <phi, q phi>
};

/// Self-consistent solution of (H + lambda q) phi = E phi with <phi, q phi> = q.
struct ConstrainedState {
  double q_target = 0.0;
  double lambda = 0.0;
  double ground_energy = 0.0;
  double v_eff = 0.0;  ///< ground_energy - lambda * q_target
  RealWave wavefunction;
  double constraint_residual = 0.0;  ///< |<phi, q phi> - q_target|
};

struct RootOptions {
  /// Accept when |<q> - q_target| <= tol * max(1, |q_target|).
  double tol = 1e-8;
  int max_doublings = 60;
  int max_bisections = 200;
  EigenOptions eigen{};
};

/// The one-parameter family H + lambda q on a fixed grid. Holds the
/// assembled base operator so repeated solves only shift the diagonal.
class TiltedFamily {
public:
  TiltedFamily(const ModelParams& model, const Grid& grid);

  const ModelParams& model() const noexcept { return model_; }
  const Grid& grid() const noexcept { return base_.grid; }
  const TridiagonalOperator& base_operator() const noexcept { return base_; }
  bool symmetric() const noexcept { return symmetric_; }

  TiltedGroundState ground_state(double lambda, const EigenOptions& options = {}) const;

  /// Same, with the eigenvalue search bracketed from a nearby solution: the
  /// ground energy is concave in lambda with slope <q>, so the tangent at
  /// `near` bounds it from above and the grid extent bounds it from below.
  TiltedGroundState ground_state(double lambda, const TiltedGroundState& near,
                                 const EigenOptions& options = {}) const;

private:
  ModelParams model_;
  TridiagonalOperator base_;
  bool symmetric_;
  double max_abs_x_;
};

TiltedGroundState tilted_ground_state(const ModelParams& model, const Grid& grid, double lambda,
                                      const EigenOptions& options = {});

/// Bisection on g(lambda) = <q>_lambda - q_target, which is strictly
/// decreasing. `lambda_hint` seeds the bracket (continuation).
ConstrainedState solve_lambda(const TiltedFamily& family, double q_target,
                              const RootOptions& options = {},
                              std::optional<double> lambda_hint = std::nullopt);
ConstrainedState solve_lambda(const ModelParams& model, const Grid& grid, double q_target,
                              const RootOptions& options = {});

struct TableMeta {
  double e1 = 0.0;
  double e2 = 0.0;
  double d = 0.0;
  ModelParams model{};
  GridSpec grid{};
  double root_tol = 0.0;
  double eigen_tol = 0.0;
};

struct FailedPoint {
  double q = 0.0;
  std::string message;
};

/// Sampled V_eff(q) = E0_{lambda(q)} - lambda(q) q.
struct EffectivePotentialTable {
  std::vector<double> q;
  std::vector<double> v_eff;
  std::vector<double> lambda;
  TableMeta meta{};
  /// The model's <q> cannot leave [q.front(), q.back()] (two-state arc);
  /// thermal coverage checks do not apply.
  bool bounded_support = false;
  std::vector<FailedPoint> failures;

  std::size_t size() const noexcept { return q.size(); }
  bool empty() const noexcept { return q.empty(); }
};

/// Lowest doublet and d = |(phi1, q phi2)| of the untilted model.
TableMeta spectrum_meta(const TiltedFamily& family, const RootOptions& options = {});

/// Tabulates V_eff on an ascending q grid. Continuation runs outward from the
/// node closest to the potential's minimum; with threads > 1 the two
/// directions run concurrently.
EffectivePotentialTable effective_potential(const ModelParams& model, const Grid& grid,
                                            std::span<const double> q_grid,
                                            const RootOptions& options = {},
                                            unsigned threads = 1);
EffectivePotentialTable effective_potential(const TiltedFamily& family,
                                            std::span<const double> q_grid,
                                            const RootOptions& options = {},
                                            unsigned threads = 1);

/// Constrained energy minimizer with <q> = q and <p> = p.
struct CoherentState {
  double q = 0.0;
  double p = 0.0;
  ComplexWave psi;
};

/// psi(x) = exp(i p x / hbar) phi(x)
CoherentState coherent_state(const ConstrainedState& cs, double p, const ModelParams& model,
                             const Grid& grid);

/// Harmonic-oscillator law of expectations,
/// P(q,p) = (beta w / 2 pi) exp[-beta (p^2/2m + m w^2 q^2 / 2)].
double ho_density_closed_form(double mass, double omega, double beta, double q, double p);

/// Harmonic-oscillator coherent state evaluated at x.
std::complex<double> ho_coherent_amplitude(double mass, double omega, double hbar, double q,
                                           double p, double x);

}  // namespace sgens
