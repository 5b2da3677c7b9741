#include "config.hpp"

#include <sgens/errors.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace sgens::cli {

using nlohmann::json;

namespace {

/// Reads fields from one JSON object and rejects any key it was not asked for.
class Section {
public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  ~Section() = default;

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  template <class T>
  void get(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& at(const char* key) const { return j_.at(key); }
  std::string path(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(path_ + ": unknown key '" + key + "'");
    }
  }

private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

BasePotential base_from_json(const json& j, const std::string& path) {
  Section s(j, path);
  std::string type;
  s.get("type", type);
  BasePotential out;
  if (type == "harmonic") {
    Harmonic h;
    s.get("omega", h.omega);
    out = h;
  } else if (type == "quartic_double_well") {
    QuarticDoubleWell q;
    s.get("w0", q.w0);
    s.get("x0", q.x0);
    out = q;
  } else if (type == "polynomial") {
    Polynomial p;
    s.get("coefficients", p.coefficients);
    out = p;
  } else {
    throw ConfigError(path + ".type: unknown potential type '" + type + "'");
  }
  s.finish();
  return out;
}

void read_matrix(const json& j, std::size_t n, std::vector<double>& out, const std::string& path) {
  out.clear();
  if (!j.is_array() || j.size() != n) throw ConfigError(path + ": expected " + std::to_string(n) + " rows");
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) {
      throw ConfigError(path + ": expected square " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (const auto& v : row) out.push_back(v.get<double>());
  }
}

}  // namespace

json potential_to_json(const PotentialSpec& potential) {
  auto base_json = [](const BasePotential& b) {
    return std::visit(
        [](const auto& v) -> json {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Harmonic>) {
            return {{"type", "harmonic"}, {"omega", v.omega}};
          } else if constexpr (std::is_same_v<T, QuarticDoubleWell>) {
            return {{"type", "quartic_double_well"}, {"w0", v.w0}, {"x0", v.x0}};
          } else {
            return {{"type", "polynomial"}, {"coefficients", v.coefficients}};
          }
        },
        b);
  };
  if (const auto* t = std::get_if<Tilted>(&potential)) {
    return {{"type", "tilted"}, {"base", base_json(t->base)}, {"lambda", t->lambda}};
  }
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Tilted>) {
          return {};
        } else {
          return base_json(BasePotential{v});
        }
      },
      potential);
}

PotentialSpec potential_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("model.potential: expected an object");
  if (j.value("type", std::string{}) == "tilted") {
    Section s(j, "model.potential");
    std::string type;
    s.get("type", type);
    Tilted t;
    s.get("lambda", t.lambda);
    if (!s.has("base")) throw ConfigError("model.potential: tilted potential needs 'base'");
    if (s.at("base").value("type", std::string{}) == "tilted") {
      throw ConfigError("model.potential.base: tilted potentials cannot be nested");
    }
    t.base = base_from_json(s.at("base"), "model.potential.base");
    s.finish();
    PotentialSpec out = t;
    validate(out);
    return out;
  }
  PotentialSpec out = std::visit([](const auto& b) -> PotentialSpec { return b; },
                                 base_from_json(j, "model.potential"));
  validate(out);
  return out;
}

json model_to_json(const ModelParams& model) {
  return {{"mass", model.mass}, {"hbar", model.hbar},
          {"potential", potential_to_json(model.potential)}};
}

json grid_to_json(const GridSpec& grid) {
  return {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_points", grid.n_points}};
}

RunConfig config_from_json(const json& root) {
  RunConfig cfg;
  Section top(root, "config");

  if (top.has("model")) {
    Section m(top.at("model"), "model");
    m.get("mass", cfg.model.mass);
    m.get("hbar", cfg.model.hbar);
    if (m.has("potential")) cfg.model.potential = potential_from_json(m.at("potential"));
    m.finish();
  }
  validate(cfg.model);

  if (top.has("grid")) {
    Section g(top.at("grid"), "grid");
    g.get("x_min", cfg.grid.x_min);
    g.get("x_max", cfg.grid.x_max);
    g.get("n_points", cfg.grid.n_points);
    g.finish();
  }
  validate(cfg.grid);

  top.get("output_dir", cfg.output_dir);
  top.get("seed", cfg.seed);
  top.get("threads", cfg.threads);

  if (top.has("eig")) {
    Section s(top.at("eig"), "eig");
    s.get("masses", cfg.eig.masses);
    s.get("k", cfg.eig.k);
    s.get("tol", cfg.eig.tol);
    s.finish();
    if (cfg.eig.k < 1 || !(cfg.eig.tol > 0.0)) throw ConfigError("eig: need k >= 1 and tol > 0");
  }
  if (top.has("veff")) {
    Section s(top.at("veff"), "veff");
    s.get("masses", cfg.veff.masses);
    s.get("q_points", cfg.veff.q_points);
    s.get("q_fraction", cfg.veff.q_fraction);
    s.get("root_tol", cfg.veff.root_tol);
    s.finish();
    if (cfg.veff.q_points < 3 || !(cfg.veff.q_fraction > 0.0 && cfg.veff.q_fraction <= 1.0)) {
      throw ConfigError("veff: need q_points >= 3 and 0 < q_fraction <= 1");
    }
  }
  if (top.has("twostate")) {
    Section s(top.at("twostate"), "twostate");
    s.get("masses", cfg.twostate.masses);
    s.get("q_points", cfg.twostate.q_points);
    s.finish();
    if (cfg.twostate.q_points < 3) throw ConfigError("twostate: need q_points >= 3");
  }
  if (top.has("fluct")) {
    Section s(top.at("fluct"), "fluct");
    s.get("masses", cfg.fluct.masses);
    s.get("t_min", cfg.fluct.t_min);
    s.get("t_max", cfg.fluct.t_max);
    s.get("count", cfg.fluct.count);
    s.get("two_state_points", cfg.fluct.two_state_points);
    s.get("exact", cfg.fluct.exact);
    s.get("spacing_over_d", cfg.fluct.spacing_over_d);
    s.finish();
    if (!(cfg.fluct.t_min > 0.0) || cfg.fluct.t_max < cfg.fluct.t_min || cfg.fluct.count < 1) {
      throw ConfigError("fluct: need 0 < t_min <= t_max and count >= 1");
    }
  }
  if (top.has("sample")) {
    Section s(top.at("sample"), "sample");
    auto& c = cfg.sample;
    s.get("basis_size", c.basis_size);
    s.get("beta", c.beta);
    s.get("beta_times_splitting", c.beta_times_splitting);
    s.get("chains", c.chains);
    s.get("steps", c.steps);
    s.get("burn_in", c.burn_in);
    s.get("thin", c.thin);
    s.get("initial_step", c.initial_step);
    s.get("oracle", c.oracle);
    s.get("validate", c.validate);
    s.get("sigmas", c.sigmas);
    s.get("histogram_bins", c.histogram_bins);
    s.get("tv_tolerance", c.tv_tolerance);
    s.get("dump_samples", c.dump_samples);
    s.get("flow_times", c.flow_times);
    if (s.has("truncated_model")) {
      Section t(s.at("truncated_model"), "sample.truncated_model");
      ExplicitTruncated et;
      t.get("energies", et.energies);
      const std::size_t n = et.energies.size();
      if (!t.has("position")) throw ConfigError("sample.truncated_model: missing 'position'");
      read_matrix(t.at("position"), n, et.position, t.path("position"));
      if (t.has("momentum")) {
        read_matrix(t.at("momentum"), n, et.momentum, t.path("momentum"));
      } else {
        et.momentum.assign(n * n, 0.0);
      }
      t.finish();
      make_truncated_model(et.energies, et.position, et.momentum, cfg.model.hbar);
      c.basis_size = n;
      c.truncated = std::move(et);
    }
    s.finish();
    if (c.beta && c.beta_times_splitting) {
      throw ConfigError("sample: give either beta or beta_times_splitting, not both");
    }
    if (!c.beta && !c.beta_times_splitting) throw ConfigError("sample: beta is required");
    if ((c.beta && !(*c.beta >= 0.0)) || (c.beta_times_splitting && !(*c.beta_times_splitting >= 0.0))) {
      throw ConfigError("sample: beta must be >= 0");
    }
    if (c.basis_size < 2 || c.chains < 1 || c.steps < 1 || c.thin < 1) {
      throw ConfigError("sample: need basis_size >= 2 and positive chains/steps/thin");
    }
    static const std::set<std::string> oracles{"auto", "harmonic", "two_level", "veff", "none"};
    if (!oracles.count(c.oracle)) throw ConfigError("sample.oracle: unknown oracle '" + c.oracle + "'");
  }
  if (top.has("canonical")) {
    Section s(top.at("canonical"), "canonical");
    s.get("betas", cfg.canonical.betas);
    s.get("k_max", cfg.canonical.k_max);
    s.finish();
    if (cfg.canonical.betas.empty() || cfg.canonical.k_max < 1) {
      throw ConfigError("canonical: need at least one beta and k_max >= 1");
    }
    for (double b : cfg.canonical.betas) {
      if (!(b > 0.0)) throw ConfigError("canonical: betas must be > 0");
    }
  }
  top.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace sgens::cli
