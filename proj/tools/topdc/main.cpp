#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "topdc/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"topdc: third-order parametric down-conversion toolkit"};
  app.require_subcommand(1);
  std::string config;
  std::string out_dir = ".";
  std::string format = "both";
  std::optional<long long> grid;
  bool quiet = false;

  for (const char* name : {"modes", "phase-match", "rate", "spectral-density", "taper-check"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "run config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_option("--grid", grid, "grid points per axis");
    sub->add_flag("--quiet", quiet, "suppress the summary on stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  topdc::cli::OutputOptions options;
  options.out_dir = out_dir;
  options.format = topdc::cli::parse_format(format);
  options.quiet = quiet;
  if (grid) {
    if (*grid < 3) {
      std::cerr << "error: --grid must be at least 3\n";
      return 2;
    }
    options.grid = static_cast<std::size_t>(*grid);
  }
  const auto* sub = app.get_subcommands().front();
  return topdc::cli::run_command(sub->get_name(), config, options, std::cout, std::cerr);
}
