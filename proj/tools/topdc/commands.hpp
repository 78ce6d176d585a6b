#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "run_config.hpp"

namespace topdc::cli {

enum class OutputFormat { csv, json, both };

struct OutputOptions {
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::both;
  std::optional<std::size_t> grid;
  bool quiet = false;
};

OutputFormat parse_format(const std::string& text);

/// Each command writes its files under options.out_dir and a short summary to `log`.
void cmd_modes(const RunConfig& config, const OutputOptions& options, std::ostream& log);
void cmd_phase_match(const RunConfig& config, const OutputOptions& options, std::ostream& log);
void cmd_rate(const RunConfig& config, const OutputOptions& options, std::ostream& log);
void cmd_spectral_density(const RunConfig& config, const OutputOptions& options, std::ostream& log);
void cmd_taper_check(const RunConfig& config, const OutputOptions& options, std::ostream& log);

/// Dispatches `command`; returns the process exit code (0, 2 or 3) and
/// reports failures on `err`.
int run_command(const std::string& command, const std::filesystem::path& config_path, const OutputOptions& options,
                std::ostream& log, std::ostream& err);

}  // namespace topdc::cli
