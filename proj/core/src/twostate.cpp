#include "sgens/twostate.hpp"

#include "sgens/errors.hpp"
#include "sgens/spectra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sgens {

namespace {

void require_in_range(const TwoStateModel& ts, double q) {
  // allow rounding at the endpoints of a table built from d itself
  if (!(std::abs(q) <= ts.d * (1.0 + 1e-14))) {
    std::ostringstream os;
    os << "two-state model is defined for |q| <= d = " << ts.d << " (got q = " << q << ")";
    throw DomainError(os.str());
  }
}

double clamp_ratio(const TwoStateModel& ts, double q) {
  return std::clamp(q / ts.d, -1.0, 1.0);
}

}  // namespace

TwoStateModel build_two_state(const ModelParams& model, const Grid& grid,
                              const EigenOptions& options) {
  if (!is_reflection_symmetric(model.potential) || !grid.symmetric()) {
    throw UsageError("build_two_state requires a reflection-symmetric potential and grid");
  }
  auto pairs = lowest_eigenpairs(assemble_hamiltonian(model, grid), 2, options);
  TwoStateModel ts;
  ts.e1 = pairs[0].energy;
  ts.e2 = pairs[1].energy;
  ts.phi1 = std::move(pairs[0].wavefunction);
  ts.phi2 = std::move(pairs[1].wavefunction);
  ts.grid = grid.spec();
  ts.model = model;
  double d = position_element(ts.phi1, ts.phi2, grid);
  if (d < 0.0) {
    for (double& v : ts.phi2) v = -v;
    d = -d;
  }
  ts.d = d;
  if (!(ts.e2 > ts.e1) || !(ts.d > 0.0)) {
    throw SolverError("two-state model: degenerate doublet or vanishing dipole", 0.0);
  }
  return ts;
}

double rescaled_arc(double q_over_d) {
  const double r = std::clamp(q_over_d, -1.0, 1.0);
  return -std::sqrt(1.0 - r * r);
}

double two_state_veff(const TwoStateModel& ts, double q) {
  require_in_range(ts, q);
  const double r = clamp_ratio(ts, q);
  return ts.mean_level() - 0.5 * ts.splitting() * std::sqrt(1.0 - r * r);
}

double two_state_lambda(const TwoStateModel& ts, double q) {
  require_in_range(ts, q);
  const double r = clamp_ratio(ts, q);
  const double s = std::sqrt(1.0 - r * r);
  if (s == 0.0) return r > 0.0 ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
  return -ts.splitting() * q / (2.0 * ts.d * ts.d * s);
}

std::pair<double, double> two_state_coefficients(const TwoStateModel& ts, double q) {
  require_in_range(ts, q);
  const double theta = 0.5 * std::asin(clamp_ratio(ts, q));
  return {std::cos(theta), std::sin(theta)};
}

CoherentState two_state_coherent(const TwoStateModel& ts, double q, double p) {
  const auto [a1, a2] = two_state_coefficients(ts, q);
  const Grid grid(ts.grid);
  CoherentState cs;
  cs.q = q;
  cs.p = p;
  cs.psi.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double phase = p * grid[i] / ts.model.hbar;
    cs.psi[i] = (a1 * ts.phi1[i] + a2 * ts.phi2[i]) *
                std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return cs;
}

EffectivePotentialTable two_state_table(const TwoStateModel& ts, std::size_t n) {
  if (n < 3) throw UsageError("two_state_table needs at least 3 nodes");
  EffectivePotentialTable table;
  table.bounded_support = true;
  table.meta.e1 = ts.e1;
  table.meta.e2 = ts.e2;
  table.meta.d = ts.d;
  table.meta.model = ts.model;
  table.meta.grid = ts.grid;
  table.q.resize(n);
  table.v_eff.resize(n);
  table.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    table.q[i] = (i == n - 1) ? ts.d : r * ts.d;
    if (2 * i + 1 == n) table.q[i] = 0.0;
    table.v_eff[i] = two_state_veff(ts, table.q[i]);
    table.lambda[i] = two_state_lambda(ts, table.q[i]);
  }
  return table;
}

}  // namespace sgens
