#pragma once

#include <map>
#include <optional>
#include <string>

#include "collide/sweeps.hpp"

namespace collide {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& text);

/// Settings for the `sweep` command. Precedence: command line, then config
/// file, then built-in defaults (threads additionally falls back to the
/// COLLIDE_QFI_THREADS environment variable before the default of 1).
struct CliConfig {
  SweepConfig sweep;
  std::string output_path = "-";  // "-" is stdout
  OutputFormat format = OutputFormat::Csv;
  std::optional<int> threads;

  CliConfig();
};

/// `start:stop:count:log|lin`, or a comma-separated list of values.
std::vector<double> parse_grid(const std::string& text);

/// Reads `key = value` lines; `#` starts a comment. Throws
/// std::invalid_argument on malformed lines and std::runtime_error if the
/// file cannot be read.
std::map<std::string, std::string> read_kv_file(const std::string& path);

/// Applies one setting. Keys: nbar_grid, gamma_tau_grid, interaction, block,
/// n_measured, quantities, g_tau_sa, output, format, seed, fd_step, threads.
void apply_setting(CliConfig& config, const std::string& key, const std::string& value);

/// Threads from the config if set, else COLLIDE_QFI_THREADS, else 1.
int effective_threads(const CliConfig& config);

}  // namespace collide
