#include "commands.hpp"

#include "io.hpp"

#include <sgens/constrain.hpp>
#include <sgens/errors.hpp>
#include <sgens/sgmc.hpp>
#include <sgens/spectra.hpp>
#include <sgens/statistics.hpp>
#include <sgens/thermal.hpp>
#include <sgens/twostate.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>

namespace sgens::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<double> masses_of(const RunConfig& cfg, const std::vector<double>& listed) {
  if (listed.empty()) return {cfg.model.mass};
  for (double m : listed) {
    if (!(m > 0.0)) throw ConfigError("masses must be > 0");
  }
  return listed;
}

ModelParams with_mass(ModelParams model, double mass) {
  model.mass = mass;
  validate(model);
  return model;
}

EigenOptions eigen_options(const RunConfig& cfg) {
  EigenOptions e;
  e.tol = cfg.eig.tol;
  return e;
}

RootOptions root_options(const RunConfig& cfg) {
  RootOptions r;
  r.tol = cfg.veff.root_tol;
  r.eigen = eigen_options(cfg);
  return r;
}

fs::path prepare_output(const RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

json run_header(const RunConfig& cfg, const std::string& command) {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"model", model_to_json(cfg.model)},
          {"grid", grid_to_json(cfg.grid)},
          {"seed", cfg.seed}};
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  v.back() = b;
  if (n % 2 == 1 && a == -b) v[n / 2] = 0.0;
  return v;
}

double rescale(double v, double e1, double e2) { return (v - 0.5 * (e1 + e2)) / (0.5 * (e2 - e1)); }

/// Two-state curve in rescaled units: E1 = -1, E2 = 1, d = 1, so beta = 1 / T_r.
EffectivePotentialTable universal_two_state(std::size_t n) {
  TwoStateModel ts;
  ts.e1 = -1.0;
  ts.e2 = 1.0;
  ts.d = 1.0;
  return two_state_table(ts, n);
}

struct Check {
  std::string name;
  double observed = 0.0;
  double error = 0.0;
  double expected = 0.0;
  bool pass = false;
};

Check compare(std::string name, const Estimate& e, double expected, double sigmas) {
  Check c{std::move(name), e.value, e.error, expected, false};
  c.pass = std::abs(e.value - expected) <= sigmas * e.error + 1e-12;
  return c;
}

json to_json(const Check& c) {
  return {{"name", c.name}, {"observed", c.observed}, {"standard_error", c.error},
          {"expected", c.expected}, {"pass", c.pass}};
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_eig(const RunConfig& cfg, std::ostream& out) {
  const Grid grid = make_grid(cfg.grid);
  const bool sym = grid.symmetric() && is_reflection_symmetric(cfg.model.potential);
  CsvWriter csv("eig", {"mass", "n", "energy", "parity", "residual"});
  json report = run_header(cfg, "eig");
  report["masses"] = json::array();
  out << std::setprecision(10);

  for (double mass : masses_of(cfg, cfg.eig.masses)) {
    const auto op = assemble_hamiltonian(with_mass(cfg.model, mass), grid);
    const auto pairs = lowest_eigenpairs(op, cfg.eig.k, eigen_options(cfg));
    json levels = json::array();
    out << "m = " << mass << "\n";
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      const char* parity = sym ? to_string(parity_of(pairs[n], grid)) : to_string(Parity::none);
      csv.row(std::vector<std::string>{format_number(mass), std::to_string(n + 1),
                                       format_number(pairs[n].energy), parity,
                                       format_number(pairs[n].residual)});
      levels.push_back({{"n", n + 1}, {"energy", pairs[n].energy}, {"parity", parity},
                        {"residual", pairs[n].residual}});
      out << "  E" << n + 1 << " = " << pairs[n].energy << "  " << parity << "  residual "
          << std::setprecision(3) << pairs[n].residual << std::setprecision(10) << "\n";
    }
    json entry = {{"mass", mass}, {"levels", levels}};
    if (pairs.size() >= 2) {
      const double d = std::abs(position_element(pairs[0].wavefunction, pairs[1].wavefunction, grid));
      entry["d"] = d;
      out << "  d  = " << d << "\n";
    }
    report["masses"].push_back(entry);
  }
  const fs::path dir = prepare_output(cfg);
  csv.save(dir / "eig.csv");
  write_json(dir / "eig.json", report);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_veff(const RunConfig& cfg, std::ostream& out) {
  const auto masses = masses_of(cfg, cfg.veff.masses);
  const Grid grid = make_grid(cfg.grid);
  const RootOptions root = root_options(cfg);
  const auto* harmonic = std::get_if<Harmonic>(&cfg.model.potential);

  struct Result {
    double mass;
    EffectivePotentialTable table;
    CsvWriter csv;
  };
  std::vector<Result> results;
  bool any_failed = false;

  for (double mass : masses) {
    const TiltedFamily family(with_mass(cfg.model, mass), grid);
    const TableMeta meta = spectrum_meta(family, root);
    const double f = cfg.veff.q_fraction;
    const auto q = linspace(-f * meta.d, f * meta.d, cfg.veff.q_points);
    EffectivePotentialTable table = effective_potential(family, q, root, cfg.threads);

    std::vector<std::string> cols{"q_over_d", "rescaled_exact", "rescaled_two_state", "q", "v_eff",
                                  "lambda"};
    if (harmonic) cols.push_back("rescaled_analytic");
    CsvWriter csv("veff", cols);
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double r = table.q[i] / meta.d;
      std::vector<double> row{r, rescale(table.v_eff[i], meta.e1, meta.e2), rescaled_arc(std::clamp(r, -1.0, 1.0)),
                              table.q[i], table.v_eff[i], table.lambda[i]};
      // E1 = hw/2, E2 = 3hw/2 and d^2 = h/(2mw), so the parabola is -1 + r^2/2.
      if (harmonic) row.push_back(-1.0 + 0.5 * r * r);
      csv.row(row);
    }
    out << std::setprecision(10) << "m = " << mass << ": E1 = " << meta.e1 << ", E2 = " << meta.e2
        << ", d = " << meta.d << ", " << table.size() << " points";
    if (!table.failures.empty()) {
      any_failed = true;
      out << ", " << table.failures.size() << " FAILED";
    }
    out << "\n";
    for (const auto& fp : table.failures) out << "  q = " << fp.q << ": " << fp.message << "\n";
    results.push_back({mass, std::move(table), std::move(csv)});
  }

  const fs::path dir = prepare_output(cfg);
  for (const auto& r : results) {
    const std::string label = mass_label(r.mass);
    r.csv.save(dir / ("veff_m" + label + ".csv"));
    write_table(dir / ("veff_table_m" + label + ".csv"), r.table);
  }
  return any_failed ? kSolverError : kOk;
}

// ---------------------------------------------------------------------------

int cmd_twostate(const RunConfig& cfg, std::ostream& out) {
  const auto masses = masses_of(cfg, cfg.twostate.masses);
  const Grid grid = make_grid(cfg.grid);
  if (!grid.symmetric() || !is_reflection_symmetric(cfg.model.potential)) {
    throw ConfigError("twostate: needs a reflection-symmetric potential on a symmetric grid");
  }
  std::vector<std::pair<double, CsvWriter>> files;
  json summary = run_header(cfg, "twostate");
  summary["masses"] = json::array();

  for (double mass : masses) {
    const TwoStateModel ts = build_two_state(with_mass(cfg.model, mass), grid, eigen_options(cfg));
    const auto table = two_state_table(ts, cfg.twostate.q_points);
    CsvWriter csv("twostate", {"q", "q_over_d", "v_eff", "rescaled", "lambda", "a1", "a2"});
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto [a1, a2] = two_state_coefficients(ts, table.q[i]);
      csv.row({table.q[i], table.q[i] / ts.d, table.v_eff[i], rescaled_arc(table.q[i] / ts.d),
               table.lambda[i], a1, a2});
    }
    out << std::setprecision(10) << "m = " << mass << ": E1 = " << ts.e1 << ", E2 = " << ts.e2
        << ", d = " << ts.d << "\n";
    summary["masses"].push_back({{"mass", mass}, {"e1", ts.e1}, {"e2", ts.e2}, {"d", ts.d}});
    files.emplace_back(mass, std::move(csv));
  }
  const fs::path dir = prepare_output(cfg);
  for (const auto& [mass, csv] : files) csv.save(dir / ("twostate_m" + mass_label(mass) + ".csv"));
  write_json(dir / "twostate.json", summary);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_fluct(const RunConfig& cfg, std::ostream& out) {
  const auto& fc = cfg.fluct;
  const auto masses = masses_of(cfg, fc.masses);

  // Universal two-state curve; T_r is the same grid for every mass.
  const auto universal = universal_two_state(fc.two_state_points);
  std::vector<double> t_r;
  {
    const auto b = betas_for_rescaled_temperatures(-1.0, 1.0, fc.t_min, fc.t_max, fc.count);
    for (double beta : b) t_r.push_back(1.0 / beta);
  }
  std::vector<double> unit_betas(t_r.size());
  std::transform(t_r.begin(), t_r.end(), unit_betas.begin(), [](double t) { return 1.0 / t; });
  const ThermalCurve two_state = fluctuation_curve(universal, unit_betas);

  CsvWriter ts_csv("fluct_two_state", {"rescaled_temperature", "delta_q_over_d"});
  for (std::size_t i = 0; i < t_r.size(); ++i) ts_csv.row({t_r[i], two_state.delta_q_over_d[i]});

  json summary = run_header(cfg, "fluct");
  summary["two_state"] = {{"t_min", t_r.front()},
                          {"delta_q_over_d_at_t_min", two_state.delta_q_over_d.front()},
                          {"t_max", t_r.back()},
                          {"delta_q_over_d_at_t_max", two_state.delta_q_over_d.back()}};
  summary["masses"] = json::array();
  out << std::setprecision(6) << "two-state: dq/d = " << two_state.delta_q_over_d.front()
      << " at T_r = " << t_r.front() << ", " << two_state.delta_q_over_d.back() << " at T_r = "
      << t_r.back() << "\n";

  std::vector<std::pair<double, CsvWriter>> files;
  if (fc.exact) {
    for (double mass : masses) {
      const ModelParams model = with_mass(cfg.model, mass);
      const TiltedFamily family(model, make_grid(cfg.grid));
      const TableMeta meta = spectrum_meta(family, root_options(cfg));
      std::vector<double> betas(t_r.size());
      for (std::size_t i = 0; i < t_r.size(); ++i) betas[i] = 2.0 / (t_r[i] * (meta.e2 - meta.e1));

      CoverageOptions cov;
      cov.spacing_over_d = fc.spacing_over_d;
      cov.threads = cfg.threads;
      cov.root = root_options(cfg);
      const auto table = covering_table(model, cfg.grid, *std::min_element(betas.begin(), betas.end()), cov);
      const ThermalCurve full = fluctuation_curve(table, betas);
      const ThermalCurve restricted =
          fluctuation_curve(restrict_table(table, -meta.d * (1 + 1e-12), meta.d * (1 + 1e-12)), betas);

      CsvWriter csv("fluct", {"rescaled_temperature", "beta", "delta_q_over_d",
                              "delta_q_over_d_restricted", "delta_q_over_d_two_state", "mean_q",
                              "delta_q", "delta_p"});
      double max_mean = 0.0;
      for (std::size_t i = 0; i < betas.size(); ++i) {
        csv.row({t_r[i], betas[i], full.delta_q_over_d[i], restricted.delta_q[i] / meta.d,
                 two_state.delta_q_over_d[i], full.mean_q[i], full.delta_q[i], full.delta_p[i]});
        max_mean = std::max(max_mean, std::abs(full.mean_q[i]));
      }
      const bool monotone = std::is_sorted(full.delta_q.begin(), full.delta_q.end());
      summary["masses"].push_back({{"mass", mass},
                                   {"e1", meta.e1},
                                   {"e2", meta.e2},
                                   {"d", meta.d},
                                   {"table_points", table.size()},
                                   {"table_q_min", table.q.front()},
                                   {"table_q_max", table.q.back()},
                                   {"grid", grid_to_json(table.meta.grid)},
                                   {"max_abs_mean_q", max_mean},
                                   {"monotone_in_temperature", monotone}});
      out << "m = " << mass << ": dq/d = " << full.delta_q_over_d.front() << " at T_r = " << t_r.front()
          << ", " << full.delta_q_over_d.back() << " at T_r = " << t_r.back() << " (" << table.size()
          << " table points)\n";
      files.emplace_back(mass, std::move(csv));
    }
  }

  const fs::path dir = prepare_output(cfg);
  ts_csv.save(dir / "fluct_two_state.csv");
  for (const auto& [mass, csv] : files) csv.save(dir / ("fluct_m" + mass_label(mass) + ".csv"));
  write_json(dir / "fluct_summary.json", summary);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const auto& s = cfg.sample;
  const TruncatedModel tm =
      s.truncated ? make_truncated_model(s.truncated->energies, s.truncated->position,
                                         s.truncated->momentum, cfg.model.hbar)
                  : build_truncated_model(cfg.model, make_grid(cfg.grid), s.basis_size,
                                          eigen_options(cfg));
  double beta = 0.0;
  if (s.beta) {
    beta = *s.beta;
  } else {
    const double gap = tm.energies[1] - tm.energies[0];
    if (!(gap > 0.0)) throw ConfigError("sample: beta_times_splitting needs E2 > E1");
    beta = *s.beta_times_splitting / gap;
  }

  std::string oracle = s.oracle;
  const auto* harmonic = std::get_if<Harmonic>(&cfg.model.potential);
  if (oracle == "auto") {
    if (tm.size == 2) {
      oracle = "two_level";
    } else if (!s.truncated && harmonic) {
      oracle = "harmonic";
    } else if (!s.truncated && beta > 0.0) {
      oracle = "veff";
    } else {
      oracle = "none";
    }
  }
  if (oracle == "two_level" && tm.size != 2) throw ConfigError("sample: two_level oracle needs basis_size 2");
  if (oracle == "harmonic" && !harmonic) throw ConfigError("sample: harmonic oracle needs a harmonic potential");
  if ((oracle == "harmonic" || oracle == "veff") && !(beta > 0.0)) {
    throw ConfigError("sample: the " + oracle + " oracle needs beta > 0");
  }
  if (oracle == "veff" && s.truncated) throw ConfigError("sample: veff oracle needs the continuum model");

  ChainConfig cc;
  cc.chains = s.chains;
  cc.steps = s.steps;
  cc.burn_in = s.burn_in;
  cc.thin = s.thin;
  cc.seed = cfg.seed;
  cc.initial_step = s.initial_step;
  cc.retain_coefficients = !s.flow_times.empty();
  cc.threads = cfg.threads;
  const SGSampleRun run = sample_sg(tm, beta, cc);
  const SampleMoments mom = sample_moments(run);

  out << std::setprecision(6) << "N = " << tm.size << ", beta = " << beta << ", " << run.samples.size()
      << " samples, acceptance " << run.acceptance_rate << ", tau_int " << run.integrated_autocorrelation_time
      << "\n";
  out << "<q> = " << mom.mean_q.value << " +- " << mom.mean_q.error << ", Var q = " << mom.var_q.value
      << " +- " << mom.var_q.error << "\n";
  out << "<p> = " << mom.mean_p.value << " +- " << mom.mean_p.error << ", Var p = " << mom.var_p.value
      << " +- " << mom.var_p.error << "\n";

  std::vector<Check> checks;
  json oracle_json = {{"name", oracle}};
  std::optional<CsvWriter> histogram;
  if (oracle == "harmonic") {
    const double m = cfg.model.mass;
    const double w = harmonic->omega;
    checks.push_back(compare("mean_q", mom.mean_q, 0.0, s.sigmas));
    checks.push_back(compare("var_q", mom.var_q, 1.0 / (beta * m * w * w), s.sigmas));
    checks.push_back(compare("mean_p", mom.mean_p, 0.0, s.sigmas));
    checks.push_back(compare("var_p", mom.var_p, m / beta, s.sigmas));
  } else if (oracle == "two_level") {
    const auto ex = oracle_two_level(tm, beta);
    checks.push_back(compare("mean_q", mom.mean_q, ex.mean_q, s.sigmas));
    checks.push_back(compare("var_q", mom.var_q, ex.var_q, s.sigmas));
    checks.push_back(compare("mean_p", mom.mean_p, ex.mean_p, s.sigmas));
    checks.push_back(compare("var_p", mom.var_p, ex.var_p, s.sigmas));
  } else if (oracle == "veff") {
    CoverageOptions cov;
    cov.threads = cfg.threads;
    cov.root = root_options(cfg);
    const auto table = covering_table(cfg.model, cfg.grid, beta, cov);
    const MarginalDensity marginal = sg_marginal_q(table, beta);
    const QMoments exact = q_moments(marginal);

    std::vector<double> qs(run.samples.size());
    std::transform(run.samples.begin(), run.samples.end(), qs.begin(), [](const SGSample& x) { return x.q; });
    const HistogramComparison h = compare_histogram(qs, marginal, s.histogram_bins);
    const double tv = h.total_variation;
    histogram.emplace("sample_histogram", std::vector<std::string>{"q_lo", "q_hi", "empirical", "exact"});
    for (std::size_t b = 0; b < h.empirical.size(); ++b) {
      histogram->row({h.edges[b], h.edges[b + 1], h.empirical[b], h.expected[b]});
    }
    checks.push_back({"total_variation", tv, 0.0, 0.0, tv < s.tv_tolerance});
    oracle_json["exact_mean_q"] = exact.mean;
    oracle_json["exact_var_q"] = exact.variance;
    oracle_json["tv_tolerance"] = s.tv_tolerance;
    out << "exact V_eff marginal: Var q = " << exact.variance << ", TV distance = " << tv << "\n";
  }

  json flows = json::array();
  bool flows_ok = true;
  for (double t : s.flow_times) {
    const FlowReport fr = unitary_flow_check(run, tm, t, s.sigmas);
    json rows = json::array();
    for (const auto& r : fr.rows) {
      rows.push_back({{"name", r.name}, {"original", r.original}, {"evolved", r.evolved},
                      {"standard_error", r.error}, {"pass", r.pass}});
    }
    flows.push_back({{"t", t}, {"rows", rows}, {"max_energy_change", fr.max_energy_change},
                     {"max_norm_deviation", fr.max_norm_deviation}, {"pass", fr.passed}});
    flows_ok = flows_ok && fr.passed;
    out << "flow t = " << t << ": " << (fr.passed ? "PASS" : "FAIL") << "\n";
  }

  bool ok = flows_ok;
  json checks_json = json::array();
  for (const auto& c : checks) {
    ok = ok && c.pass;
    checks_json.push_back(to_json(c));
    out << "  " << std::left << std::setw(16) << c.name << std::right << c.observed;
    if (c.name != "total_variation") out << " +- " << c.error << "  expected " << c.expected;
    out << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  oracle_json["checks"] = checks_json;

  json report = run_header(cfg, "sample");
  report["basis_size"] = tm.size;
  report["energies"] = tm.energies;
  report["beta"] = beta;
  report["chains"] = run.chain_count;
  report["steps_per_chain"] = run.steps_per_chain;
  report["burn_in"] = run.burn_in;
  report["thin"] = run.thin;
  report["acceptance_rate"] = run.acceptance_rate;
  report["chain_acceptance"] = run.chain_acceptance;
  report["step_size"] = run.step_size;
  report["integrated_autocorrelation_time"] = run.integrated_autocorrelation_time;
  report["moments"] = {
      {"mean_q", {mom.mean_q.value, mom.mean_q.error}},
      {"var_q", {mom.var_q.value, mom.var_q.error}},
      {"mean_p", {mom.mean_p.value, mom.mean_p.error}},
      {"var_p", {mom.var_p.value, mom.var_p.error}},
  };
  report["oracle"] = oracle_json;
  report["flow"] = flows;
  report["validation"] = s.validate ? (ok ? "pass" : "fail") : "skipped";

  const fs::path dir = prepare_output(cfg);
  if (s.dump_samples) {
    CsvWriter csv("samples", {"q", "p", "energy", "chain", "step"});
    for (const auto& x : run.samples) {
      csv.row(std::vector<std::string>{format_number(x.q), format_number(x.p), format_number(x.energy),
                                       std::to_string(x.chain), std::to_string(x.step)});
    }
    csv.save(dir / "samples.csv");
  }
  if (histogram) histogram->save(dir / "sample_histogram.csv");
  write_json(dir / "sample.json", report);

  if (s.validate) out << "validation: " << (ok ? "PASS" : "FAIL") << "\n";
  return (s.validate && !ok) ? kValidationFailed : kOk;
}

// ---------------------------------------------------------------------------

int cmd_canonical(const RunConfig& cfg, std::ostream& out) {
  const Grid grid = make_grid(cfg.grid);
  CsvWriter csv("canonical", {"beta", "k", "energy", "weight", "q"});
  json report = run_header(cfg, "canonical");
  report["betas"] = json::array();

  for (double beta : cfg.canonical.betas) {
    const CanonicalAtoms atoms = canonical_atoms(cfg.model, grid, beta, cfg.canonical.k_max, eigen_options(cfg));
    for (std::size_t k = 0; k < atoms.atoms.size(); ++k) {
      const auto& a = atoms.atoms[k];
      csv.row({beta, static_cast<double>(k + 1), a.energy, a.weight, a.q});
    }
    CoverageOptions cov;
    cov.threads = cfg.threads;
    cov.root = root_options(cfg);
    const auto table = covering_table(cfg.model, cfg.grid, beta, cov);
    const double beta_arr[] = {beta};
    const ThermalCurve sg = fluctuation_curve(table, beta_arr);
    const double d = table.meta.d;

    report["betas"].push_back({{"beta", beta},
                               {"atoms", atoms.atoms.size()},
                               {"log_z", atoms.log_z},
                               {"truncation_weight", atoms.truncation_weight},
                               {"canonical_mean_q", atoms.mean_q()},
                               {"canonical_delta_q", atoms.delta_q()},
                               {"sg_mean_q", sg.mean_q[0]},
                               {"sg_delta_q", sg.delta_q[0]},
                               {"d", d}});
    out << std::setprecision(6) << "beta = " << beta << ": canonical dq = " << atoms.delta_q()
        << "  SG dq = " << sg.delta_q[0] << "  (d = " << d << ", " << atoms.atoms.size() << " atoms)\n";
  }
  const fs::path dir = prepare_output(cfg);
  csv.save(dir / "canonical.csv");
  write_json(dir / "canonical.json", report);
  return kOk;
}

// ---------------------------------------------------------------------------

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> table{
      {"eig", cmd_eig},       {"veff", cmd_veff},     {"twostate", cmd_twostate},
      {"fluct", cmd_fluct},   {"sample", cmd_sample}, {"canonical", cmd_canonical}};
  const auto it = table.find(name);
  if (it == table.end()) {
    err << "error: unknown command '" << name << "'\n";
    return kConfigError;
  }
  try {
    return it->second(cfg, out);
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << " (increase canonical.k_max)\n";
    return kSolverError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kSolverError;
  } catch (const CoverageError& e) {
    err << "coverage error: " << e.what() << "\n";
    return kSolverError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UsageError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolverError;
  }
}

}  // namespace sgens::cli
