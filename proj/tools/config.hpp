#pragma once

#include <sgens/lattice.hpp>
#include <sgens/sgmc.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sgens::cli {

struct EigSection {
  std::vector<double> masses;  ///< empty: the model's mass only
  std::size_t k = 4;
  double tol = 1e-10;
};

struct VeffSection {
  std::vector<double> masses;  ///< empty: the model's mass only
  std::size_t q_points = 81;
  double q_fraction = 0.995;   ///< nodes span [-f d, f d]
  double root_tol = 1e-8;
};

struct TwoStateSection {
  std::vector<double> masses;
  std::size_t q_points = 41;
};

struct FluctSection {
  std::vector<double> masses;
  double t_min = 1e-2;
  double t_max = 1e2;
  std::size_t count = 60;
  std::size_t two_state_points = 2001;
  bool exact = true;
  double spacing_over_d = 1.0 / 40.0;
};

/// Optional explicit truncated model (bypasses the eigensolve).
struct ExplicitTruncated {
  std::vector<double> energies;
  std::vector<double> position;  ///< row-major N x N
  std::vector<double> momentum;  ///< row-major N x N, P = -i A
};

struct SampleSection {
  std::size_t basis_size = 8;
  std::optional<double> beta;
  std::optional<double> beta_times_splitting;  ///< beta (E2 - E1)
  std::size_t chains = 4;
  std::size_t steps = 250000;
  std::size_t burn_in = 20000;
  std::size_t thin = 1;
  double initial_step = 0.1;
  std::string oracle = "auto";  ///< auto | harmonic | two_level | veff | none
  bool validate = true;
  double sigmas = 3.0;
  std::size_t histogram_bins = 40;
  double tv_tolerance = 0.05;
  bool dump_samples = true;
  std::vector<double> flow_times;
  std::optional<ExplicitTruncated> truncated;
};

struct CanonicalSection {
  std::vector<double> betas{1.0};
  std::size_t k_max = 30;
};

struct RunConfig {
  ModelParams model{};
  GridSpec grid{};
  std::string output_dir = "out";
  std::uint64_t seed = 20060101;
  unsigned threads = 1;
  EigSection eig{};
  VeffSection veff{};
  TwoStateSection twostate{};
  FluctSection fluct{};
  SampleSection sample{};
  CanonicalSection canonical{};
};

nlohmann::json potential_to_json(const PotentialSpec& potential);
PotentialSpec potential_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const ModelParams& model);
nlohmann::json grid_to_json(const GridSpec& grid);

/// Parses and validates a configuration document. Unknown keys anywhere are
/// rejected with ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace sgens::cli
