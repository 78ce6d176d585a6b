#pragma once

#include <vector>

#include "topdc/guided_mode.hpp"
#include "topdc/materials.hpp"
#include "topdc/mode_label.hpp"

namespace topdc {

/// Bessel-zero constant u of a hollow-capillary mode:
/// HE_{νm} → j_{ν-1,m}, EH_{νm} → j_{ν+1,m}, TE/TM_{0m} → j_{1,m}.
double capillary_mode_constant(const ModeLabel& label);

/// n_gas sqrt(1 - (u λ / (2π a n_gas))^2); InvalidGeometry if a <= λ.
double capillary_index(double core_radius, double n_gas, double wavelength, double u);
double capillary_mode(double core_radius, const materials::GasState& gas, double wavelength,
                      const ModeLabel& label);

/// Closed-form β(ω) over [lambda_min, lambda_max].
GuidedMode capillary_guided_mode(double core_radius, const materials::GasState& gas, const ModeLabel& label,
                                 double lambda_min, double lambda_max);

struct LossEstimate {
  double db_per_m = 0.0;
  bool on_resonance = false;
  int nearest_resonance_order = 0;
  double nearest_resonance_wavelength = 0.0;
};

/// Wall resonances λ_j = 2 t sqrt(n^2 - 1) / j, j = 1..count.
std::vector<double> resonance_wavelengths(double wall_thickness, double n_glass, int count);

/// Single-tube anti-resonant leakage loss of the fundamental core mode.
/// on_resonance is set (and db_per_m left infinite) within ±guard_band·λ_j of a resonance.
LossEstimate antiresonant_loss_estimate(double core_radius, double wall_thickness, double wavelength,
                                        double n_glass, double guard_band = 0.02);

}  // namespace topdc
