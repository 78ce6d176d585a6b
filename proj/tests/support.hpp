#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "topdc/constants.hpp"
#include "topdc/guided_mode.hpp"
#include "topdc/materials.hpp"
#include "topdc/rates.hpp"

namespace topdc::test {

// Values computed by tests/oracles/frozen_values.py, independent of the library.
namespace frozen {
inline constexpr double silica_1um = 1.4504174093158557;
inline constexpr double silica_532nm = 1.4607063446219677;
inline constexpr double xenon_1bar_293k_532nm = 1.000638671029517;
inline constexpr double capillary_he11_vacuum_1596nm = 0.9995015868374095;  // a = 19.35 µm
inline constexpr double rod790_532nm_he11 = 1.3896086180946865;
inline constexpr double rod790_532nm_eh11 = 1.1464544893896906;
inline constexpr double rod790_532nm_he12 = 1.0804064817961858;
inline constexpr double gauss_4mode_area_w2um = 1.2566370614359172e-11;
inline constexpr double gamma2_hybrid_toy = 0.0005240355194847038;
}  // namespace frozen

inline constexpr std::uint64_t property_seed = 20240917;

inline std::mt19937_64 rng() { return std::mt19937_64(property_seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

inline std::filesystem::path data_dir() { return TOPDC_TEST_DATA_DIR; }
inline std::filesystem::path config_dir() { return TOPDC_TEST_CONFIG_DIR; }

inline const materials::MaterialDatabase& database() {
  static const auto db = materials::MaterialDatabase::load(data_dir() / "materials.toml");
  return db;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// β(ω) = n ω / c + k2 (ω − ω0)² / 2 on [ω_lo, ω_hi].
inline GuidedMode quadratic_mode(double n, double k2, double omega0, double omega_lo, double omega_hi,
                                 ModeLabel label = {}) {
  return GuidedMode(
      label, ModeSource::tabulated,
      [=](double w) { return n * w / constants::c + 0.5 * k2 * (w - omega0) * (w - omega0); }, omega_lo, omega_hi);
}

inline GuidedMode vacuum_line(double omega_lo, double omega_hi) {
  return GuidedMode({}, ModeSource::tabulated, [](double w) { return w / constants::c; }, omega_lo, omega_hi);
}

/// Toy spontaneous problem at λp = 532 nm with a phase-matched quadratic IR mode.
struct ToySpontaneous {
  TripletProblem problem;
  ProcessConfig config;
};

inline ToySpontaneous toy_spontaneous(double k2 = 1e-27, double mismatch = 0.0) {
  const double lp = 532e-9;
  const double wp = constants::angular_frequency(lp);
  const double w0 = wp / 3.0;
  const double n_ir = 1.45;
  auto ir = quadratic_mode(n_ir, k2, w0, 0.2 * wp, 0.5 * wp);
  // Pump index chosen so Δβ = mismatch at the degenerate point.
  const double beta_p = 3.0 * n_ir * w0 / constants::c + mismatch;
  auto pump = GuidedMode({ModeFamily::HE, 1, 2}, ModeSource::tabulated,
                         [=](double w) { return beta_p * w / wp; }, 0.9 * wp, 1.1 * wp);
  ToySpontaneous t{{pump, ir, ir, ir, {}}, {}};
  t.problem.nonlinearity.chi3 = 2.5e-22;
  t.problem.nonlinearity.a_eff = 7.89e-12;
  t.config.pump_power = 0.02;
  t.config.pump_wavelength = lp;
  t.config.fiber_length = 0.1;
  t.config.detection_bandwidth = 150e-9;
  return t;
}

inline ToySpontaneous toy_seeded(double k2 = 1e-27) {
  auto t = toy_spontaneous(k2);
  t.config.pump_power = 1e6;
  t.config.seed_power = 5e5;
  t.config.seed_wavelength = 1.62e-6;
  t.config.pulse_duration = 20e-12;
  t.config.inverse_duty_cycle = 5e7;
  t.config.detection_bandwidth = 50e-9;
  t.config.grid_resolution = 201;
  return t;
}

}  // namespace topdc::test
