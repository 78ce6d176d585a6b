#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topdc/guided_mode.hpp"

namespace topdc {

/// Pump plus three down-converted modes. For seeded problems mode3 carries the seed.
struct PhaseMatchProblem {
  GuidedMode pump;
  GuidedMode mode1;
  GuidedMode mode2;
  GuidedMode mode3;
  double pump_frequency = 0.0;  // rad/s
  double beta_nl = 0.0;         // rad/m
};

inline constexpr double energy_tolerance = 1e-9;

/// β_p − β_1 − β_2 − β_3 − β_NL. EnergyNotConserved unless ω1+ω2+ω3 = ω_p
/// to 1e-9 relative.
double delta_beta(const PhaseMatchProblem& problem, double omega1, double omega2, double omega3);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// L sinc(ΔβL/2) exp(iΔβL/2), in m.
std::complex<double> phase_matching_function(double delta_beta, double length);

enum class ScanParameter { pressure, diameter, pump_wavelength, none };

std::string to_string(ScanParameter p);
ScanParameter parse_scan_parameter(const std::string& text);

struct PhaseMatchSolution {
  double parameter_value = 0.0;
  double residual = 0.0;  // Δβ at the root, rad/m
  double slope = 0.0;     // dΔβ/dparameter
  bool degenerate = false;  // evaluated at ω1 = ω2 = ω3
  bool degenerate_interval = false;  // Δβ vanished over a whole run of grid points
  double interval_low = 0.0;
  double interval_high = 0.0;
};

struct ScanSpec {
  ScanParameter parameter = ScanParameter::none;
  double low = 0.0;
  double high = 0.0;
  std::size_t points = 100;
  /// Evaluate at (ω1, ω2) given as fractions of the pump frequency instead of 1/3, 1/3.
  std::optional<std::pair<double, double>> omega_fractions;
  double tolerance = 1e-3;  // rad/m
  int max_iterations = 80;
};

using ProblemFactory = std::function<PhaseMatchProblem(double parameter)>;

/// Δβ of the problem built at `parameter`, at the point selected by `spec`.
double scan_delta_beta(const ProblemFactory& factory, const ScanSpec& spec, double parameter);

/// Every sign change of Δβ over the scan grid, bisected; sorted by parameter.
/// An empty result is valid. NoRoot when the range or grid is invalid.
std::vector<PhaseMatchSolution> find_phase_match(const ProblemFactory& factory, const ScanSpec& spec);

}  // namespace topdc
