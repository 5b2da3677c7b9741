#include "sgens/sgmc.hpp"

#include "sgens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

namespace sgens {

TruncatedModel make_truncated_model(std::vector<double> energies, std::vector<double> position,
                                    std::vector<double> momentum, double hbar) {
  const std::size_t n = energies.size();
  if (n < 2) throw ConfigError("truncated model needs N >= 2");
  if (position.size() != n * n || momentum.size() != n * n) {
    throw ConfigError("truncated model: matrix shape does not match the number of energies");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(energies[k])) throw ConfigError("truncated model: non-finite energy");
    if (k > 0 && energies[k] < energies[k - 1]) {
      throw ConfigError("truncated model: energies must be ascending");
    }
    for (std::size_t l = 0; l < n; ++l) {
      const double qs = position[k * n + l] - position[l * n + k];
      const double as = momentum[k * n + l] + momentum[l * n + k];
      const double scale = 1e-10 * std::max(1.0, std::abs(position[k * n + l]) +
                                                     std::abs(momentum[k * n + l]));
      if (std::abs(qs) > scale) throw ConfigError("truncated model: Q is not symmetric");
      if (std::abs(as) > scale) throw ConfigError("truncated model: A is not antisymmetric");
    }
  }
  if (!(hbar > 0.0)) throw ConfigError("truncated model: hbar must be > 0");
  return TruncatedModel{n, std::move(energies), std::move(position), std::move(momentum), hbar};
}

TruncatedModel build_truncated_model(const ModelParams& model, const Grid& grid, std::size_t n,
                                     const EigenOptions& options) {
  if (n < 2) throw ConfigError("build_truncated_model: N must be >= 2");
  const auto pairs = lowest_eigenpairs(assemble_hamiltonian(model, grid), n, options);
  std::vector<double> e(n), q(n * n), a(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = pairs[k].energy;
    for (std::size_t l = k; l < n; ++l) {
      const double qkl = position_element(pairs[k].wavefunction, pairs[l].wavefunction, grid);
      q[k * n + l] = q[l * n + k] = qkl;
      if (l != k) {
        const double akl =
            model.hbar * derivative_element(pairs[k].wavefunction, pairs[l].wavefunction, grid);
        a[k * n + l] = akl;
        a[l * n + k] = -akl;
      }
    }
  }
  return make_truncated_model(std::move(e), std::move(q), std::move(a), model.hbar);
}

double energy_of(const TruncatedModel& tm, std::span<const std::complex<double>> c) {
  double s = 0.0;
  for (std::size_t k = 0; k < tm.size; ++k) s += std::norm(c[k]) * tm.energies[k];
  return s;
}

double position_of(const TruncatedModel& tm, std::span<const std::complex<double>> c) {
  double s = 0.0;
  for (std::size_t k = 0; k < tm.size; ++k) {
    s += tm.q(k, k) * std::norm(c[k]);
    double off = 0.0;
    for (std::size_t l = k + 1; l < tm.size; ++l) {
      off += tm.q(k, l) * (std::conj(c[k]) * c[l]).real();
    }
    s += 2.0 * off;
  }
  return s;
}

double momentum_of(const TruncatedModel& tm, std::span<const std::complex<double>> c) {
  double s = 0.0;
  for (std::size_t k = 0; k < tm.size; ++k) {
    for (std::size_t l = k + 1; l < tm.size; ++l) {
      s += tm.a(k, l) * (std::conj(c[k]) * c[l]).imag();
    }
  }
  return 2.0 * s;
}

namespace {

struct ChainResult {
  std::vector<SGSample> samples;
  std::vector<Coefficients> coefficients;
  double acceptance = 0.0;
  double step = 0.0;
  double tau = 1.0;
};

ChainResult run_chain(const TruncatedModel& tm, double beta, const ChainConfig& cfg,
                      std::uint32_t chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(cfg.seed >> 32), chain, 0x5347u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const std::size_t n = tm.size;
  // energies relative to the ground level keep exp() in range at large beta
  std::vector<double> shifted(n);
  for (std::size_t k = 0; k < n; ++k) shifted[k] = tm.energies[k] - tm.energies[0];
  auto energy = [&](const Coefficients& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(c[k]) * shifted[k];
    return s;
  };
  auto normalize_in_place = [](Coefficients& c) {
    double n2 = 0.0;
    for (const auto& z : c) n2 += std::norm(z);
    if (!(n2 > 0.0)) return false;
    const double s = 1.0 / std::sqrt(n2);
    for (auto& z : c) z *= s;
    return true;
  };
  auto gaussian_vector = [&](Coefficients& c, double sigma, const Coefficients* base) {
    constexpr double kHalf = 0.70710678118654752440;
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> xi(normal(rng) * kHalf, normal(rng) * kHalf);
      c[k] = (base ? (*base)[k] : 0.0) + sigma * xi;
    }
  };

  Coefficients c(n);
  do {
    gaussian_vector(c, 1.0, nullptr);
  } while (!normalize_in_place(c));
  double e = energy(c);

  ChainResult out;
  out.samples.reserve(cfg.steps);
  if (cfg.retain_coefficients) out.coefficients.reserve(cfg.steps);

  double sigma = cfg.initial_step;
  std::size_t window_accepted = 0;
  std::size_t window_total = 0;
  std::size_t accepted = 0;
  const std::size_t total = cfg.burn_in + cfg.steps * cfg.thin;
  Coefficients proposal(n);

  for (std::size_t s = 0; s < total; ++s) {
    do {
      gaussian_vector(proposal, sigma, &c);
    } while (!normalize_in_place(proposal));
    const double e_new = energy(proposal);
    if (!std::isfinite(e_new)) throw ConfigError("sample_sg: non-finite energy in proposal");
    const double de = e_new - e;
    const bool accept = de <= 0.0 || uniform(rng) < std::exp(-beta * de);
    if (accept) {
      c.swap(proposal);
      e = e_new;
    }

    if (s < cfg.burn_in) {
      window_accepted += accept;
      if (++window_total == cfg.tune_interval) {
        const double rate = static_cast<double>(window_accepted) / static_cast<double>(window_total);
        if (rate < 0.3) sigma *= 0.7;
        if (rate > 0.5) sigma = std::min(sigma * 1.4, cfg.max_step);
        window_accepted = window_total = 0;
      }
      continue;
    }
    accepted += accept;
    const std::size_t k = s - cfg.burn_in;
    if (k % cfg.thin == 0) {
      out.samples.push_back({position_of(tm, c), momentum_of(tm, c), energy_of(tm, c), chain,
                             static_cast<std::uint64_t>(k / cfg.thin)});
      if (cfg.retain_coefficients) out.coefficients.push_back(c);
    }
  }
  out.acceptance = static_cast<double>(accepted) / static_cast<double>(cfg.steps * cfg.thin);
  out.step = sigma;

  std::vector<double> qs(out.samples.size());
  std::transform(out.samples.begin(), out.samples.end(), qs.begin(),
                 [](const SGSample& x) { return x.q; });
  out.tau = integrated_autocorrelation_time(qs);
  return out;
}

}  // namespace

SGSampleRun sample_sg(const TruncatedModel& tm, double beta, const ChainConfig& config) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("sample_sg: beta must be >= 0");
  if (config.chains == 0 || config.steps == 0 || config.thin == 0 || config.tune_interval == 0) {
    throw ConfigError("sample_sg: chains, steps, thin and tune_interval must be positive");
  }
  if (!(config.initial_step > 0.0)) throw ConfigError("sample_sg: initial_step must be > 0");

  std::vector<ChainResult> results(config.chains);
  const unsigned workers = std::max(1u, config.threads);
  for (std::size_t first = 0; first < config.chains; first += workers) {
    std::vector<std::future<ChainResult>> batch;
    const std::size_t last = std::min<std::size_t>(config.chains, first + workers);
    for (std::size_t i = first; i < last; ++i) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 run_chain, std::cref(tm), beta, std::cref(config),
                                 static_cast<std::uint32_t>(i)));
    }
    for (std::size_t i = first; i < last; ++i) results[i] = batch[i - first].get();
  }

  SGSampleRun run;
  run.beta = beta;
  run.chain_count = config.chains;
  run.steps_per_chain = config.steps;
  run.burn_in = config.burn_in;
  run.thin = config.thin;
  run.seed = config.seed;
  double acc = 0.0;
  double tau = 0.0;
  for (auto& r : results) {
    run.samples.insert(run.samples.end(), r.samples.begin(), r.samples.end());
    if (config.retain_coefficients) {
      for (auto& c : r.coefficients) run.coefficients.push_back(std::move(c));
    }
    run.chain_acceptance.push_back(r.acceptance);
    run.step_size.push_back(r.step);
    acc += r.acceptance;
    tau += r.tau;
  }
  run.acceptance_rate = acc / static_cast<double>(config.chains);
  run.integrated_autocorrelation_time = tau / static_cast<double>(config.chains);
  return run;
}

std::vector<std::vector<double>> chain_series(const SGSampleRun& run, double SGSample::*field) {
  std::vector<std::vector<double>> out(run.chain_count);
  for (std::size_t c = 0; c < run.chain_count; ++c) {
    out[c].reserve(run.steps_per_chain);
    for (std::size_t i = 0; i < run.steps_per_chain; ++i) {
      out[c].push_back(run.samples[c * run.steps_per_chain + i].*field);
    }
  }
  return out;
}

namespace {

std::vector<std::span<const double>> as_spans(const std::vector<std::vector<double>>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

SampleMoments sample_moments(const SGSampleRun& run, std::size_t batches_per_chain) {
  const auto qs = chain_series(run, &SGSample::q);
  const auto ps = chain_series(run, &SGSample::p);
  const auto q_spans = as_spans(qs);
  const auto p_spans = as_spans(ps);
  return {batch_mean(q_spans, batches_per_chain), batch_variance(q_spans, batches_per_chain),
          batch_mean(p_spans, batches_per_chain), batch_variance(p_spans, batches_per_chain)};
}

// ---------------------------------------------------------------------------

namespace {

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace

TwoLevelMoments oracle_two_level(double e1, double e2, std::array<double, 3> q, double a12,
                                 double beta) {
  if (!(beta >= 0.0)) throw UsageError("oracle_two_level: beta must be >= 0");
  const double gap = beta * (e2 - e1);
  // beyond w ~ 60/gap the Boltzmann weight is below e^-60
  const double w_max = gap > 60.0 ? 60.0 / gap : 1.0;
  constexpr int kPanels = 64;
  constexpr int kPhi = 64;
  static const auto gl = gauss_legendre(20);

  double z = 0.0, mq = 0.0, mq2 = 0.0, mp = 0.0, mp2 = 0.0;
  for (int panel = 0; panel < kPanels; ++panel) {
    const double lo = w_max * panel / kPanels;
    const double hi = w_max * (panel + 1) / kPanels;
    for (std::size_t g = 0; g < gl.first.size(); ++g) {
      const double w = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.first[g];
      const double weight = 0.5 * (hi - lo) * gl.second[g] * std::exp(-gap * w);
      const double amp = 2.0 * std::sqrt(w * (1.0 - w));
      const double diag = (1.0 - w) * q[0] + w * q[2];
      for (int j = 0; j < kPhi; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / kPhi;
        const double qv = diag + amp * q[1] * std::cos(phi);
        const double pv = amp * a12 * std::sin(phi);
        const double wt = weight / kPhi;
        z += wt;
        mq += wt * qv;
        mq2 += wt * qv * qv;
        mp += wt * pv;
        mp2 += wt * pv * pv;
      }
    }
  }
  mq /= z;
  mp /= z;
  return {mq, mq2 / z - mq * mq, mp, mp2 / z - mp * mp};
}

TwoLevelMoments oracle_two_level(const TruncatedModel& tm, double beta) {
  if (tm.size != 2) throw UsageError("oracle_two_level requires a two-level model");
  return oracle_two_level(tm.energies[0], tm.energies[1], {tm.q(0, 0), tm.q(0, 1), tm.q(1, 1)},
                          tm.a(0, 1), beta);
}

// ---------------------------------------------------------------------------

FlowReport unitary_flow_check(const SGSampleRun& run, const TruncatedModel& tm, double t,
                              double sigmas) {
  if (run.coefficients.empty() || run.coefficients.size() != run.samples.size()) {
    throw UsageError("unitary_flow_check: run was sampled without retain_coefficients");
  }
  FlowReport report;
  report.t = t;

  std::vector<std::complex<double>> phase(tm.size);
  for (std::size_t k = 0; k < tm.size; ++k) {
    const double angle = -tm.energies[k] * t / tm.hbar;
    phase[k] = {std::cos(angle), std::sin(angle)};
  }

  const std::size_t per_chain = run.steps_per_chain;
  std::vector<std::vector<double>> q0(run.chain_count), p0(run.chain_count), q1(run.chain_count),
      p1(run.chain_count);
  Coefficients evolved(tm.size);
  for (std::size_t i = 0; i < run.coefficients.size(); ++i) {
    const auto& c = run.coefficients[i];
    for (std::size_t k = 0; k < tm.size; ++k) evolved[k] = phase[k] * c[k];
    const std::size_t chain = i / per_chain;
    q0[chain].push_back(position_of(tm, c));
    p0[chain].push_back(momentum_of(tm, c));
    q1[chain].push_back(position_of(tm, evolved));
    p1[chain].push_back(momentum_of(tm, evolved));
    report.max_energy_change =
        std::max(report.max_energy_change, std::abs(energy_of(tm, evolved) - energy_of(tm, c)));
    double n2 = 0.0;
    for (const auto& z : evolved) n2 += std::norm(z);
    report.max_norm_deviation = std::max(report.max_norm_deviation, std::abs(n2 - 1.0));
  }

  auto moment_chains = [](const std::vector<std::vector<double>>& chains, int power) {
    std::vector<std::vector<double>> out(chains.size());
    for (std::size_t c = 0; c < chains.size(); ++c) {
      out[c].reserve(chains[c].size());
      for (double x : chains[c]) out[c].push_back(std::pow(x, power));
    }
    return out;
  };

  report.passed = true;
  const std::pair<const char*, const std::vector<std::vector<double>>*> observables[] = {
      {"q", &q0}, {"p", &p0}};
  const std::vector<std::vector<double>>* evolved_obs[] = {&q1, &p1};
  for (int o = 0; o < 2; ++o) {
    for (int power = 1; power <= 4; ++power) {
      const auto a = moment_chains(*observables[o].second, power);
      const auto b = moment_chains(*evolved_obs[o], power);
      const auto ea = batch_mean(as_spans(a));
      const auto eb = batch_mean(as_spans(b));
      FlowRow row;
      row.name = std::string("E[") + observables[o].first + "^" + std::to_string(power) + "]";
      row.original = ea.value;
      row.evolved = eb.value;
      row.error = std::hypot(ea.error, eb.error);
      row.pass = std::abs(ea.value - eb.value) <= sigmas * row.error ||
                 std::abs(ea.value - eb.value) <= 1e-12 * std::max(1.0, std::abs(ea.value));
      report.passed = report.passed && row.pass;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace sgens
