#pragma once

#include <numbers>

namespace topdc::constants {

inline constexpr double c = 299792458.0;            // m/s
inline constexpr double epsilon0 = 8.8541878128e-12; // F/m
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double pi = std::numbers::pi;

// Reference state for gas properties: 1 bar, 20 degC.
inline constexpr double reference_pressure = 1.0e5;    // Pa
inline constexpr double reference_temperature = 293.15; // K

inline constexpr double angular_frequency(double wavelength) { return 2.0 * pi * c / wavelength; }
inline constexpr double wavelength_of(double omega) { return 2.0 * pi * c / omega; }

}  // namespace topdc::constants
