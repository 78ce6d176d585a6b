#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "topdc/mode_label.hpp"
#include "topdc/phasematch.hpp"
#include "topdc/rates.hpp"

namespace topdc::cli {

/// A value fixed in the config or solved for as the phase-matching root.
struct Resolvable {
  std::optional<double> value;  // nullopt means "phase_matched"
};

struct TaperedPlatform {
  Resolvable diameter;  // m
  std::string strand_material = "silica";
  std::string environment = "vacuum";  // "vacuum" or a gas species
  double environment_pressure = 0.0;   // Pa
  double environment_temperature = 293.15;
};

struct HollowPlatform {
  double core_radius = 0.0;
  double wall_thickness = 0.0;
  std::string glass_material = "silica";
  std::string gas = "xenon";
  Resolvable pressure;  // Pa
  double temperature = 293.15;
};

struct HybridPlatform {
  std::filesystem::path pump_table;
  std::filesystem::path ir_table;
};

using FiberPlatform = std::variant<TaperedPlatform, HollowPlatform, HybridPlatform>;

std::string platform_name(const FiberPlatform& p);

struct ModeSelection {
  ModeLabel pump{ModeFamily::HE, 1, 1};
  ModeLabel triplet{ModeFamily::HE, 1, 1};
  ModeLabel seed{ModeFamily::HE, 1, 1};
  double ir_min = 1.2e-6;  // m, band of the sampled down-converted modes
  double ir_max = 2.2e-6;
  std::size_t samples = 300;
};

enum class Chi3Choice { value, material, gas_effective };

struct NonlinearSettings {
  Chi3Choice chi3_choice = Chi3Choice::value;
  double chi3 = 0.0;
  std::optional<double> a_eff;  // nullopt: computed from field grids
  std::size_t field_points = 256;
};

struct ScanSettings {
  ScanSpec spec;
  std::vector<ModeLabel> pump_modes;  // empty: the configured pump mode only
};

struct SweepSettings {
  ScanParameter parameter = ScanParameter::none;
  std::vector<double> values;
  bool relative_to_root = false;
  std::size_t grid_resolution = 201;
  double center_tolerance = 0.02;
};

struct ModesReportSettings {
  std::vector<double> wavelengths;
  std::vector<ModeLabel> labels;
};

struct TaperSettings {
  std::filesystem::path profile;
  std::string fiber = "smf28";
  std::string environment = "vacuum";
  double pump_wavelength = 532e-9;
  double core_threshold = 15e-6;
};

struct RunConfig {
  std::filesystem::path source;
  std::string sha256;
  std::filesystem::path materials_path;
  std::optional<FiberPlatform> platform;
  ModeSelection modes;
  NonlinearSettings nonlinear;
  std::optional<ProcessConfig> process;
  std::optional<ScanSettings> scan;
  std::optional<SweepSettings> sweep;
  std::optional<ModesReportSettings> modes_report;
  std::optional<TaperSettings> taper;
};

/// Default material data file: $TOPDC_DATA if set, else the config's
/// `data.materials`, else the compiled-in path.
std::filesystem::path default_materials_path();

/// Parses and validates; InputError naming the offending field on failure.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& source);

}  // namespace topdc::cli
