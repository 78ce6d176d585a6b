#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "topdc/field_grid.hpp"
#include "topdc/guided_mode.hpp"
#include "topdc/mode_label.hpp"

namespace topdc {

/// Outer radius along the taper; z strictly increasing.
struct TaperProfile {
  std::vector<double> z;       // m
  std::vector<double> radius;  // m

  /// CSV `z_m,radius_m` with `#` comments.
  static TaperProfile parse(const std::string& text, const std::string& source_name = "<string>");
  static TaperProfile load(const std::filesystem::path& path);

  void validate() const;
  double waist_radius() const;
};

/// Ω = ρ |β_i − β_n| / (2π)
double adiabatic_limit(double local_radius, double beta_i, double beta_neighbor);

/// |dρ/dz| from centred differences (one-sided at the ends).
std::vector<double> local_angle(const TaperProfile& profile);

enum class Guidance { core, cladding };

struct TaperModeSpec {
  ModeLabel label;
  Guidance guidance = Guidance::core;
};

struct ModePair {
  TaperModeSpec a;
  TaperModeSpec b;
  double wavelength = 0.0;
  std::string name() const;
};

/// (HE11, HE12) at the pump and at the triplet wavelength 3λ_p, (HE12, HE13) at the pump.
std::vector<ModePair> default_mode_pairs(double pump_wavelength);

/// Untapered two-layer fiber in an environment. Core-guided modes above
/// core_threshold outer radius use the scaled core; below it, and for
/// cladding modes at every radius, the strand is a rod in the environment.
struct TaperFiber {
  double core_radius = 0.0;
  double outer_radius = 0.0;
  std::function<double(double)> n_core;
  std::function<double(double)> n_clad;
  std::function<double(double)> n_env;
  double core_threshold = 15e-6;
};

/// ModeCutOff if the mode is not guided at this radius.
double taper_mode_beta(const TaperFiber& fiber, const TaperModeSpec& mode, double local_radius, double wavelength);

/// Limit angle of `pair` at each radius; nullopt where either mode is cut off.
std::vector<std::optional<double>> limit_curve(const TaperFiber& fiber, const ModePair& pair,
                                               const std::vector<double>& radii);

struct PairCurve {
  std::string name;
  std::vector<std::optional<double>> limit;
};

struct AdiabaticityReport {
  std::vector<double> z;
  std::vector<double> radius;
  std::vector<double> angle;
  std::vector<PairCurve> pairs;
  bool pass = true;
  double worst_margin = 0.0;  // min over z of min(limit)/angle; +inf when the profile is flat
  std::vector<std::string> notes;

  std::string to_json(const std::string& config_hash = {}) const;
};

/// ProfileTooShort below 3 samples.
AdiabaticityReport check_profile(const TaperProfile& profile, const TaperFiber& fiber,
                                 const std::vector<ModePair>& pairs);

/// 2π / |β_a − β_b|; DegenerateModes when equal.
double beat_period(const GuidedMode& a, const GuidedMode& b, double omega);
double beat_period(double beta_a, double beta_b);

/// |<a, b>|² / (‖a‖² ‖b‖²); GridMismatch unless the grids share geometry.
double launch_overlap(const FieldGrid& in, const FieldGrid& out);
double launch_overlap(const GuidedMode& in, const GuidedMode& out);

}  // namespace topdc
