#pragma once

#include "paramosc/config.hpp"
#include "paramosc/output.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace paramosc {

struct RunOptions {
    std::filesystem::path out = ".";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Format format = Format::csv;
};

struct CommandResult {
    std::vector<std::filesystem::path> files;
    bool passed = true;               ///< false only for a failed validate run
    std::vector<std::string> report;  ///< one line per check or note
};

CommandResult cmd_bifurcation(Config& cfg, const RunOptions& opts);
CommandResult cmd_distribution(Config& cfg, const RunOptions& opts);
CommandResult cmd_rates(Config& cfg, const RunOptions& opts);
CommandResult cmd_fpe(Config& cfg, const RunOptions& opts);
CommandResult cmd_simulate(Config& cfg, const RunOptions& opts);
CommandResult cmd_validate(Config& cfg, const RunOptions& opts);

const std::vector<std::string>& command_names();

/// Dispatches by name; throws ConfigError for an unknown command.
CommandResult run_command(const std::string& name, Config& cfg, const RunOptions& opts);

/// Exit status for the CLI: 0 ok, 2 input errors, 3 numerical failures
/// and failed validation.
int exit_code(const CommandResult& result);
int exit_code(const std::exception& error);

/// mu_p = 0 and f_p chosen so that Delta U / D = barrier_ratio.
ScaledParams reference_point(double noise = 1.0 / 30.0, double barrier_ratio = 5.0);

} // namespace paramosc
