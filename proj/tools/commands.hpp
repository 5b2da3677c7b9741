#pragma once

#include "config.hpp"

#include <ostream>
#include <string>

namespace sgens::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kSolverError = 3 };

/// Each command computes everything first and writes its files into
/// `cfg.output_dir` at the end. The return value is the process exit code;
/// library exceptions propagate and are mapped by `run_command`.
int cmd_eig(const RunConfig& cfg, std::ostream& out);
int cmd_veff(const RunConfig& cfg, std::ostream& out);
int cmd_twostate(const RunConfig& cfg, std::ostream& out);
int cmd_fluct(const RunConfig& cfg, std::ostream& out);
int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_canonical(const RunConfig& cfg, std::ostream& out);

/// Dispatches by name and maps exceptions onto exit codes, printing the
/// diagnostic to `err`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace sgens::cli
