// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sgens/constrain.hpp>
#include <sgens/sgmc.hpp>
#include <sgens/spectra.hpp>
#include <sgens/thermal.hpp>
#include <sgens/twostate.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sgens;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

ModelParams double_well(double mass) { return {mass, 1.0, QuarticDoubleWell{1.0, 1.5}}; }

constexpr double kMasses[] = {0.2, 0.5, 1.0, 1.5};

std::vector<double> uniform(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  if (n % 2 == 1 && a == -b) v[n / 2] = 0.0;
  return v;
}

bool within(const Estimate& e, double expected, double sigmas = 3.0) {
  return std::abs(e.value - expected) <= sigmas * e.error;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string est(const Estimate& e) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.5f +- %.5f", e.value, e.error);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome doublet_values() {
  struct Row {
    double m, e1, e2, d;
  };
  const Row caption[] = {{0.2, 3.415753, 4.877688, 1.158335},
                         {0.5, 2.582908, 2.865508, 1.268715},
                         {1.0, 1.970442, 2.012262, 1.353385},
                         {1.5, 1.64383345, 1.65329839, 1.38670188}};
  const auto t0 = std::chrono::steady_clock::now();
  const Grid grid = make_grid({});
  double worst = 0.0;
  for (const auto& r : caption) {
    const auto pairs = lowest_eigenpairs(assemble_hamiltonian(double_well(r.m), grid), 2);
    const double d = std::abs(position_element(pairs[0].wavefunction, pairs[1].wavefunction, grid));
    worst = std::max({worst, std::abs(pairs[0].energy / r.e1 - 1.0), std::abs(pairs[1].energy / r.e2 - 1.0),
                      std::abs(d / r.d - 1.0)});
  }
  const double t = seconds_since(t0);
  return {worst < 5e-4 && t < 30.0,
          fmt("max relative error %.2e over 12 values (tol 5e-4)", worst) + fmt(", %.2f s", t)};
}

Outcome arc_shape() {
  const Grid grid = make_grid({});
  std::vector<double> gaps;
  std::size_t below = 0, total = 0;
  double most_below = 0.0;
  std::ostringstream os;
  for (double m : kMasses) {
    const TiltedFamily fam(double_well(m), grid);
    const TableMeta meta = spectrum_meta(fam);
    const auto table = effective_potential(fam, uniform(-0.995 * meta.d, 0.995 * meta.d, 81));
    const double half = 0.5 * (meta.e2 - meta.e1), mid = 0.5 * (meta.e1 + meta.e2);
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table.q[i] == 0.0) continue;  // both equal -1 there
      const double r = table.q[i] / meta.d;
      const double diff = (table.v_eff[i] - mid) / half - rescaled_arc(r);
      ++total;
      if (!(diff > 0.0)) {
        ++below;
        most_below = std::min(most_below, diff);
      }
    }
    const auto cs = solve_lambda(fam, 0.5 * meta.d);
    gaps.push_back(std::abs((cs.v_eff - mid) / half - rescaled_arc(0.5)));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) decreasing = decreasing && gaps[i] < gaps[i - 1];
  os << "points above arc: " << total - below << "/" << total;
  if (below) os << " (deepest " << fmt("%.3e", most_below) << " below)";
  os << "; |gap| at q/d=0.5:";
  for (double g : gaps) os << fmt(" %.3e", g);
  os << (decreasing ? " strictly decreasing" : " NOT decreasing");
  return {below == 0 && decreasing, os.str()};
}

Outcome harmonic_closed_forms() {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelParams model{1.0, 1.0, Harmonic{1.0}};
  const auto table = effective_potential(model, make_grid({-10.0, 10.0, 6001}), uniform(-3.0, 3.0, 61));
  double dv = 0.0, dl = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double q = table.q[i];
    dv = std::max(dv, std::abs(table.v_eff[i] - (0.5 + 0.5 * q * q)));
    dl = std::max(dl, std::abs(table.lambda[i] + q));
  }
  const double t = seconds_since(t0);
  return {dv < 1e-6 && dl < 1e-6 && t < 5.0 && table.failures.empty(),
          fmt("max |v_eff - closed form| %.2e", dv) + fmt(", max |lambda + q| %.2e", dl) +
              fmt(" over 61 points, %.2f s", t)};
}

Outcome two_state_asymptotes() {
  const auto ts = build_two_state(double_well(1.0), make_grid({}));
  const auto table = two_state_table(ts, 2001);
  const double betas[] = {2.0 / (100.0 * ts.splitting()), 2.0 / (0.01 * ts.splitting())};
  const auto curve = fluctuation_curve(table, betas);
  const double hot = curve.delta_q_over_d[0], cold = curve.delta_q_over_d[1];
  const bool ok = std::abs(hot - 1.0 / std::sqrt(3.0)) <= 1e-3 && std::abs(cold / 0.1 - 1.0) <= 0.05;
  return {ok, fmt("dq/d = %.5f at T_r=100 (1/sqrt3 = 0.57735 +- 1e-3)", hot) +
                  fmt(", %.5f at T_r=0.01 (0.1 within 5%%)", cold)};
}

Outcome harmonic_sampler() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto tm = build_truncated_model({1.0, 1.0, Harmonic{1.0}}, make_grid({-10.0, 10.0, 4001}), 24);
  ChainConfig cfg;
  cfg.chains = 4;
  cfg.steps = 200000;
  cfg.burn_in = 20000;
  const auto run = sample_sg(tm, 2.0, cfg);
  const auto m = sample_moments(run);
  const double t = seconds_since(t0);
  const bool ok = within(m.mean_q, 0.0) && within(m.mean_p, 0.0) && within(m.var_q, 0.5) && within(m.var_p, 0.5) &&
                  t < 60.0;
  return {ok, "<q> " + est(m.mean_q) + ", <p> " + est(m.mean_p) + ", Var q " + est(m.var_q) + ", Var p " +
                  est(m.var_p) + " (target 0.5; exact N=24 truncated Var q = 0.27581)" + fmt(", %.1f s", t)};
}

Outcome two_level_oracle() {
  const auto tm = build_truncated_model(double_well(0.2), make_grid({}), 2);
  std::ostringstream os;
  bool ok = true;
  for (double beta : {0.0, 1.0, 10.0}) {
    const auto exact = oracle_two_level(tm, beta);
    ChainConfig cfg;
    cfg.chains = 4;
    cfg.steps = 200000;
    cfg.burn_in = 20000;
    cfg.seed = 20060101 + static_cast<std::uint64_t>(beta);
    const auto m = sample_moments(sample_sg(tm, beta, cfg));
    const bool b = within(m.mean_q, exact.mean_q) && within(m.var_q, exact.var_q) && within(m.mean_p, exact.mean_p) &&
                   within(m.var_p, exact.var_p);
    ok = ok && b;
    os << "beta=" << beta << ": Var q " << est(m.var_q) << " vs " << fmt("%.5f", exact.var_q) << (b ? " ok" : " off")
       << "; ";
    if (beta == 0.0) {
      const double q12 = tm.q(0, 1);
      const bool uniform_ok = std::abs(exact.var_q - q12 * q12 / 3.0) < 1e-10;
      ok = ok && uniform_ok;
      os << "oracle Var q - Q12^2/3 = " << fmt("%.1e", exact.var_q - q12 * q12 / 3.0) << "; ";
    }
  }
  return {ok, os.str()};
}

Outcome steepest_descent() {
  const ModelParams model = double_well(0.2);
  const auto tm = build_truncated_model(model, make_grid({}), 8);
  const double beta = 20.0 / (tm.energies[1] - tm.energies[0]);
  ChainConfig cfg;
  cfg.chains = 4;
  cfg.steps = 250000;
  cfg.burn_in = 20000;
  const auto run = sample_sg(tm, beta, cfg);
  std::vector<double> qs;
  qs.reserve(run.samples.size());
  for (const auto& s : run.samples) qs.push_back(s.q);
  const auto table = covering_table(model, GridSpec{}, beta);
  const auto h = compare_histogram(qs, sg_marginal_q(table, beta), 40);
  return {h.total_variation < 0.05 && qs.size() >= 1000000,
          fmt("TV distance %.4f (tol 0.05)", h.total_variation) + fmt(" from %.0f samples, 40 bins", double(qs.size()))};
}

Outcome canonical_contrast() {
  std::ostringstream os;
  bool ok = true;
  for (double m : kMasses) {
    const ModelParams model = double_well(m);
    const Grid grid = make_grid({});
    const auto pairs = lowest_eigenpairs(assemble_hamiltonian(model, grid), 2);
    const double beta = 1.0 / (pairs[1].energy - pairs[0].energy);
    const auto atoms = canonical_atoms(model, grid, beta, 60);
    double max_q = 0.0;
    for (const auto& a : atoms.atoms) max_q = std::max(max_q, std::abs(a.q));
    const auto table = covering_table(model, GridSpec{}, beta);
    const double b[] = {beta};
    const auto sg = fluctuation_curve(table, b);
    const bool pass = max_q < 1e-8 && sg.delta_q[0] > 0.1 * table.meta.d;
    ok = ok && pass;
    os << "m=" << m << ": max|q_k| " << fmt("%.1e", max_q) << ", SG dq/d " << fmt("%.3f", sg.delta_q_over_d[0]) << "; ";
  }
  return {ok, os.str()};
}

Outcome structural_invariants() {
  std::ostringstream os;
  const Grid grid = make_grid({});
  std::size_t convex_bad = 0, mono_bad = 0, envelope_bad = 0, closure_bad = 0, ortho_bad = 0;
  double worst_envelope = 0.0, worst_momentum = 0.0;
  for (double m : kMasses) {
    const TiltedFamily fam(double_well(m), grid);
    const TableMeta meta = spectrum_meta(fam);
    const auto table = effective_potential(fam, uniform(-1.5 * meta.d, 1.5 * meta.d, 61));
    const double scale = std::max(1.0, std::abs(meta.e1));
    for (std::size_t i = 1; i + 1 < table.size(); ++i) {
      if (table.v_eff[i - 1] - 2.0 * table.v_eff[i] + table.v_eff[i + 1] < -1e-8 * scale) ++convex_bad;
    }
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (!(table.lambda[i] < table.lambda[i - 1])) ++mono_bad;
    }
    RootOptions root;
    const double h = 1e-3;
    for (double r : {-0.9, -0.4, 0.25, 0.7, 1.2}) {
      const double q = r * meta.d;
      const auto mid = solve_lambda(fam, q, root);
      const auto lo = solve_lambda(fam, q - h, root, mid.lambda);
      const auto hi = solve_lambda(fam, q + h, root, mid.lambda);
      const double rel = std::abs((hi.v_eff - lo.v_eff) / (2.0 * h) + mid.lambda) / std::max(1.0, std::abs(mid.lambda));
      worst_envelope = std::max(worst_envelope, rel);
      if (rel > 1e-4) ++envelope_bad;
      const double back = position_element(mid.wavefunction, mid.wavefunction, grid);
      if (std::abs(back - q) > root.tol * std::max(1.0, std::abs(q))) ++closure_bad;
      const auto cs = coherent_state(mid, 0.3, fam.model(), grid);
      if (std::abs(position_expectation(cs.psi, grid) - q) > root.tol * std::max(1.0, std::abs(q))) ++closure_bad;
      // reported only: central differences read <p> low by O(dx^2)
      worst_momentum = std::max(worst_momentum, std::abs(momentum_expectation(cs.psi, grid) - 0.3));
    }
    const auto pairs = lowest_eigenpairs(fam.base_operator(), 8);
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        if (std::abs(inner(grid, pairs[a].wavefunction, pairs[b].wavefunction) - (a == b ? 1.0 : 0.0)) > 1e-8) ++ortho_bad;
      }
    }
  }

  const auto tm = build_truncated_model(double_well(0.5), grid, 8);
  ChainConfig cfg;
  cfg.chains = 4;
  cfg.steps = 50000;
  cfg.burn_in = 10000;
  cfg.retain_coefficients = true;
  const auto run = sample_sg(tm, 2.0 / (tm.energies[1] - tm.energies[0]), cfg);
  std::size_t flow_bad = 0;
  for (double t : {0.5, 3.0, 40.0}) {
    if (!unitary_flow_check(run, tm, t).passed) ++flow_bad;
  }
  os << "convexity violations " << convex_bad << ", lambda monotonicity " << mono_bad << ", envelope "
     << envelope_bad << fmt(" (worst rel %.1e)", worst_envelope) << ", closure " << closure_bad << ", orthonormality "
     << ortho_bad << ", flow " << flow_bad << "/3" << fmt("; coherent <p> - p at most %.1e", worst_momentum);
  return {convex_bad + mono_bad + envelope_bad + closure_bad + ortho_bad + flow_bad == 0, os.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"double-well doublet values", doublet_values},
      {"V_eff above two-state arc, gap shrinking with m", arc_shape},
      {"harmonic closed forms", harmonic_closed_forms},
      {"two-state fluctuation asymptotes", two_state_asymptotes},
      {"sampler vs harmonic law (N=24, beta=2)", harmonic_sampler},
      {"N=2 sampler vs quadrature oracle", two_level_oracle},
      {"low-temperature q-marginal (TV)", steepest_descent},
      {"canonical vs SG contrast", canonical_contrast},
      {"structural invariants", structural_invariants},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s: %s\n", index++, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
