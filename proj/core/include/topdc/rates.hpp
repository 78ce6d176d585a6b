#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topdc/phasematch.hpp"

namespace topdc {

struct ProcessConfig {
  double pump_power = 0.0;  // W, CW or pulse peak
  std::optional<double> seed_power;       // W
  double pump_wavelength = 0.0;           // m
  std::optional<double> seed_wavelength;  // m
  std::optional<double> pulse_duration;   // s
  std::optional<double> inverse_duty_cycle;
  double fiber_length = 0.0;         // m
  double detection_bandwidth = 0.0;  // m, full width per axis
  std::size_t grid_resolution = 801;
  std::size_t max_resolution = 6401;
  double convergence_tolerance = 0.01;
  bool nonlinear_phase = false;
  bool perfect_phase_matching = false;  // |f|² ≡ L² upper bound

  void validate() const;
  bool seeded() const { return seed_power.has_value() || seed_wavelength.has_value(); }
};

/// Nonlinear inputs of the rate formulas.
struct Nonlinearity {
  double chi3 = 0.0;    // m²/V²
  double a_eff = 0.0;   // m², four-mode slot
  double gamma_p = 0.0;                 // 1/(W m), used only with nonlinear_phase
  std::array<double, 3> gamma_xpm{};    // 1/(W m)
};

/// Modes and nonlinearity of one TOPDC configuration. For seeded runs mode3 is the seed mode.
struct TripletProblem {
  GuidedMode pump;
  GuidedMode mode1;
  GuidedMode mode2;
  GuidedMode mode3;
  Nonlinearity nonlinearity;
};

struct FrequencyWindow {
  double omega1_min = 0.0;
  double omega1_max = 0.0;
  double omega2_min = 0.0;
  double omega2_max = 0.0;
};

/// Full width Δλ centred on `center_wavelength`, converted to ω on both axes.
FrequencyWindow centered_window(double center_wavelength, double bandwidth);

/// Per-configuration constants of the spontaneous density.
class SpontaneousKernel {
 public:
  SpontaneousKernel(const TripletProblem& problem, const ProcessConfig& config);

  /// S(ω1, ω2); NonPositiveOmega3 when ω1 + ω2 >= ω_p.
  double operator()(double omega1, double omega2) const;
  double delta_beta(double omega1, double omega2) const;

  double omega_p() const { return omega_p_; }
  double gamma_squared() const { return gamma_sq_; }
  double beta_nl() const { return beta_nl_; }

 private:
  const TripletProblem* problem_;
  double omega_p_;
  double beta_p_;
  double beta_nl_;
  double gamma_sq_;
  double prefactor_;
  double length_;
  bool perfect_;
};

double spectral_density(const TripletProblem& problem, const ProcessConfig& config, double omega1, double omega2);

/// ρ(Δω, t) = t² sinc²(Δω t / 2)
double pulse_envelope_density(double delta_omega, double duration);

struct RateResult {
  double value = 0.0;             // Hz (spontaneous) or pairs per pulse (seeded)
  double coarse_value = 0.0;      // result one resolution step below `value`
  double relative_change = 0.0;   // |value - coarse| / |value|
  std::size_t resolution = 0;     // grid points per axis of `value`
  double masked_area = 0.0;       // (rad/s)² excluded because ω1 + ω2 >= ω_p
  double gamma_squared = 0.0;
  double beta_nl = 0.0;
  FrequencyWindow window;
  std::optional<double> pairs_per_second;  // seeded runs with pulse data
};

/// Trapezoid over an n x n uniform grid on `window`; masked cells excluded.
/// Returns (integral, masked area).
std::pair<double, double> integrate_spontaneous(const SpontaneousKernel& kernel, const FrequencyWindow& window,
                                                std::size_t n);

/// Spontaneous triplet rate in Hz with one-step doubling convergence check.
/// GridTooCoarse if the check still fails beyond max_resolution.
RateResult spontaneous_rate(const TripletProblem& problem, const ProcessConfig& config,
                            std::optional<FrequencyWindow> window = std::nullopt);

/// Seeded differential pair number dN/(dω1 dω2) per pulse.
class SeededKernel {
 public:
  SeededKernel(const TripletProblem& problem, const ProcessConfig& config);

  double operator()(double omega1, double omega2) const;
  double delta_beta(double omega1, double omega2) const;

  double omega_p() const { return omega_p_; }
  double omega_s() const { return omega_s_; }
  double omega_tilde() const { return omega_p_ - omega_s_; }
  double gamma_squared() const { return gamma_sq_; }
  double beta_nl() const { return beta_nl_; }
  double duration() const { return duration_; }
  double length() const { return length_; }
  double prefactor() const { return prefactor_; }
  double beta_p() const { return beta_p_; }
  double beta_s() const { return beta_s_; }
  bool perfect() const { return perfect_; }
  const TripletProblem& problem() const { return *problem_; }

 private:
  const TripletProblem* problem_;
  double omega_p_;
  double omega_s_;
  double beta_p_;
  double beta_s_;
  double beta_nl_;
  double gamma_sq_;
  double prefactor_;
  double length_;
  double duration_;
  bool perfect_;
};

/// Pairs per pulse. MissingSeed without seed power/wavelength or pulse duration.
RateResult seeded_pairs_per_pulse(const TripletProblem& problem, const ProcessConfig& config,
                                  std::optional<FrequencyWindow> window = std::nullopt);

}  // namespace topdc
