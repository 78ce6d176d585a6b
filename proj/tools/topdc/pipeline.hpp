#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "topdc/dispersion_table.hpp"
#include "topdc/materials.hpp"
#include "topdc/phasematch.hpp"
#include "topdc/rates.hpp"

namespace topdc::cli {

/// Values of the scannable parameters for one evaluation.
struct PlatformState {
  double diameter = 0.0;         // m, tapered
  double pressure = 0.0;         // Pa, hollow core
  double pump_wavelength = 0.0;  // m
};

/// Builds modes and problems for a validated RunConfig.
class Pipeline {
 public:
  explicit Pipeline(RunConfig config);

  const RunConfig& config() const { return config_; }
  const materials::MaterialDatabase& database() const { return db_; }
  const FiberPlatform& platform() const;

  /// Config values, with "phase_matched" entries solved for, except the
  /// parameter `unresolved`, which is left at 0.
  PlatformState base_state(ScanParameter unresolved = ScanParameter::none) const;
  PlatformState with(PlatformState s, ScanParameter p, double value) const;
  double value_of(const PlatformState& s, ScanParameter p) const;

  /// Root of Δβ at the degenerate point over the [scan] range for `p`.
  double phase_matched_value(ScanParameter p, const PlatformState& start, const ModeLabel& pump) const;

  /// Modes solved on demand; cheap to build, used by scans.
  PhaseMatchProblem direct_problem(const PlatformState& s, const ModeLabel& pump) const;
  /// Sampled modes and nonlinearity for rate integration.
  TripletProblem triplet_problem(const PlatformState& s) const;
  ProcessConfig process(const PlatformState& s) const;

  /// A mode of `label` around `wavelength` (±0.1 %), for reports.
  GuidedMode mode_near(const PlatformState& s, const ModeLabel& label, double wavelength) const;
  std::optional<double> loss_db_per_m(const PlatformState& s, double wavelength, bool* on_resonance) const;

  /// SHA-256 of every data file read, keyed by path.
  std::map<std::string, std::string> data_hashes() const;
  std::string chi3_note() const;

 private:
  double solid(const std::string& material, double wavelength) const;
  double environment_index(double wavelength) const;
  materials::GasState hollow_gas(const PlatformState& s) const;
  GuidedMode make_mode(const PlatformState& s, const ModeLabel& label, double lambda_min, double lambda_max,
                       bool sampled) const;
  double chi3(const PlatformState& s) const;

  RunConfig config_;
  materials::MaterialDatabase db_;
  std::optional<DispersionTable> pump_table_;
  std::optional<DispersionTable> ir_table_;
};

}  // namespace topdc::cli
