#include "sgens/constrain.hpp"

#include "sgens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace sgens {

TiltedFamily::TiltedFamily(const ModelParams& model, const Grid& grid)
    : model_(model),
      base_(assemble_hamiltonian(model, grid)),
      symmetric_(is_reflection_symmetric(model.potential) && grid.symmetric()),
      max_abs_x_(std::max(std::abs(grid.spec().x_min), std::abs(grid.spec().x_max))) {}

TiltedGroundState TiltedFamily::ground_state(double lambda, const EigenOptions& options) const {
  if (!std::isfinite(lambda)) throw UsageError("tilted_ground_state: lambda must be finite");
  auto pairs = lowest_eigenpairs(add_linear_tilt(base_, lambda), 1, options);
  TiltedGroundState gs;
  gs.lambda = lambda;
  gs.energy = pairs.front().energy;
  gs.wavefunction = std::move(pairs.front().wavefunction);
  gs.mean_position = position_element(gs.wavefunction, gs.wavefunction, grid());
  return gs;
}

TiltedGroundState TiltedFamily::ground_state(double lambda, const TiltedGroundState& near,
                                            const EigenOptions& options) const {
  const double dl = lambda - near.lambda;
  const double pad = 10.0 * options.tol + 1e-12 * std::max(1.0, std::abs(near.energy));
  EigenOptions hinted = options;
  hinted.ground_bracket = std::pair{near.energy - std::abs(dl) * max_abs_x_ - pad,
                                    near.energy + dl * near.mean_position + pad};
  return ground_state(lambda, hinted);
}

TiltedGroundState tilted_ground_state(const ModelParams& model, const Grid& grid, double lambda,
                                      const EigenOptions& options) {
  return TiltedFamily(model, grid).ground_state(lambda, options);
}

namespace {

ConstrainedState make_state(TiltedGroundState gs, double q_target) {
  ConstrainedState cs;
  cs.q_target = q_target;
  cs.lambda = gs.lambda;
  cs.ground_energy = gs.energy;
  cs.v_eff = gs.energy - gs.lambda * q_target;
  cs.constraint_residual = std::abs(gs.mean_position - q_target);
  cs.wavefunction = std::move(gs.wavefunction);
  return cs;
}

}  // namespace

ConstrainedState solve_lambda(const TiltedFamily& family, double q_target,
                              const RootOptions& options, std::optional<double> lambda_hint) {
  if (!std::isfinite(q_target)) throw UsageError("solve_lambda: q_target must be finite");
  const double tol_q = options.tol * std::max(1.0, std::abs(q_target));

  if (q_target == 0.0 && family.symmetric()) {
    return make_state(family.ground_state(0.0, options.eigen), q_target);
  }

  const double kappa = curvature_estimate(family.model().potential, family.model().mass);
  const double center = lambda_hint.value_or(-kappa * q_target);

  TiltedGroundState best;
  double best_residual = std::numeric_limits<double>::infinity();
  std::optional<TiltedGroundState> last;
  auto g = [&](double lambda) {
    auto gs = last ? family.ground_state(lambda, *last, options.eigen)
                   : family.ground_state(lambda, options.eigen);
    const double r = gs.mean_position - q_target;
    if (std::abs(r) < best_residual) {
      best_residual = std::abs(r);
      best = gs;
    }
    last = std::move(gs);
    return r;
  };

  const double g_center = g(center);
  if (std::abs(g_center) <= tol_q) return make_state(std::move(best), q_target);

  // <q> above target means the tilt must grow; g is strictly decreasing
  const double direction = g_center > 0.0 ? 1.0 : -1.0;
  double near = center;
  double step = 0.05 * std::max(1.0, std::abs(center));
  double far = center + direction * step;
  double g_far = g(far);
  int doublings = 0;
  while (g_far * direction > 0.0) {
    if (std::abs(g_far) <= tol_q) return make_state(std::move(best), q_target);
    if (++doublings > options.max_doublings) {
      std::ostringstream os;
      os << "solve_lambda: could not bracket <q> = " << q_target << " after "
         << options.max_doublings << " doublings (last lambda " << far << ")";
      throw UnreachableTargetError(os.str(), best_residual);
    }
    near = far;
    step *= 2.0;
    far = center + direction * step;
    g_far = g(far);
  }
  if (std::abs(g_far) <= tol_q) return make_state(std::move(best), q_target);

  double lo = std::min(near, far);  // g(lo) > 0
  double hi = std::max(near, far);  // g(hi) < 0
  for (int it = 0; it < options.max_bisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (std::abs(gm) <= tol_q) return make_state(std::move(best), q_target);
    (gm > 0.0 ? lo : hi) = mid;
  }
  std::ostringstream os;
  os << "solve_lambda: bracket collapsed at lambda ~ " << 0.5 * (lo + hi)
     << " with |<q> - q| = " << best_residual << " > " << tol_q;
  throw SolverError(os.str(), best_residual);
}

ConstrainedState solve_lambda(const ModelParams& model, const Grid& grid, double q_target,
                              const RootOptions& options) {
  return solve_lambda(TiltedFamily(model, grid), q_target, options);
}

TableMeta spectrum_meta(const TiltedFamily& family, const RootOptions& options) {
  const auto pairs = lowest_eigenpairs(family.base_operator(), 2, options.eigen);
  TableMeta meta;
  meta.e1 = pairs[0].energy;
  meta.e2 = pairs[1].energy;
  meta.d = std::abs(position_element(pairs[0].wavefunction, pairs[1].wavefunction, family.grid()));
  meta.model = family.model();
  meta.grid = family.grid().spec();
  meta.root_tol = options.tol;
  meta.eigen_tol = options.eigen.tol;
  return meta;
}

EffectivePotentialTable effective_potential(const TiltedFamily& family,
                                            std::span<const double> q_grid,
                                            const RootOptions& options, unsigned threads) {
  for (std::size_t i = 1; i < q_grid.size(); ++i) {
    if (!(q_grid[i] > q_grid[i - 1])) {
      throw UsageError("effective_potential: q grid must be strictly ascending");
    }
  }
  EffectivePotentialTable table;
  table.meta = spectrum_meta(family, options);
  if (q_grid.empty()) return table;

  const auto ground = family.ground_state(0.0, options.eigen);
  const auto start = static_cast<std::size_t>(
      std::min_element(q_grid.begin(), q_grid.end(),
                       [&](double a, double b) {
                         return std::abs(a - ground.mean_position) <
                                std::abs(b - ground.mean_position);
                       }) -
      q_grid.begin());

  const std::size_t n = q_grid.size();
  std::vector<std::optional<ConstrainedState>> states(n);
  std::vector<std::string> errors(n);

  auto sweep = [&](std::ptrdiff_t from, std::ptrdiff_t to, std::ptrdiff_t step,
                   std::optional<double> hint) {
    for (std::ptrdiff_t i = from; i != to; i += step) {
      try {
        states[i] = solve_lambda(family, q_grid[i], options, hint);
        hint = states[i]->lambda;
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };

  sweep(static_cast<std::ptrdiff_t>(start), static_cast<std::ptrdiff_t>(start) + 1, 1, 0.0);
  const std::optional<double> seed =
      states[start] ? std::optional<double>(states[start]->lambda) : std::optional<double>(0.0);
  if (threads > 1) {
    std::thread right([&] {
      sweep(static_cast<std::ptrdiff_t>(start) + 1, static_cast<std::ptrdiff_t>(n), 1, seed);
    });
    sweep(static_cast<std::ptrdiff_t>(start) - 1, -1, -1, seed);
    right.join();
  } else {
    sweep(static_cast<std::ptrdiff_t>(start) + 1, static_cast<std::ptrdiff_t>(n), 1, seed);
    sweep(static_cast<std::ptrdiff_t>(start) - 1, -1, -1, seed);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (states[i]) {
      table.q.push_back(q_grid[i]);
      table.v_eff.push_back(states[i]->v_eff);
      table.lambda.push_back(states[i]->lambda);
    } else {
      table.failures.push_back({q_grid[i], errors[i]});
    }
  }
  return table;
}

EffectivePotentialTable effective_potential(const ModelParams& model, const Grid& grid,
                                            std::span<const double> q_grid,
                                            const RootOptions& options, unsigned threads) {
  return effective_potential(TiltedFamily(model, grid), q_grid, options, threads);
}

CoherentState coherent_state(const ConstrainedState& cs, double p, const ModelParams& model,
                             const Grid& grid) {
  if (cs.wavefunction.size() != grid.size()) {
    throw UsageError("coherent_state: wavefunction does not live on this grid");
  }
  CoherentState out;
  out.q = cs.q_target;
  out.p = p;
  out.psi.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double phase = p * grid[i] / model.hbar;
    out.psi[i] = cs.wavefunction[i] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return out;
}

double ho_density_closed_form(double mass, double omega, double beta, double q, double p) {
  if (!(beta > 0.0)) throw DomainError("ho_density_closed_form: beta must be positive");
  const double energy = p * p / (2.0 * mass) + 0.5 * mass * omega * omega * q * q;
  return beta * omega / (2.0 * std::numbers::pi) * std::exp(-beta * energy);
}

std::complex<double> ho_coherent_amplitude(double mass, double omega, double hbar, double q,
                                           double p, double x) {
  const double a = mass * omega / hbar;
  const double amp = std::pow(a / std::numbers::pi, 0.25) * std::exp(-0.5 * a * (x - q) * (x - q));
  const double phase = p * x / hbar;
  return amp * std::complex<double>(std::cos(phase), std::sin(phase));
}

}  // namespace sgens
