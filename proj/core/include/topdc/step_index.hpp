#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "topdc/field_grid.hpp"
#include "topdc/guided_mode.hpp"
#include "topdc/mode_label.hpp"

namespace topdc {

struct StepIndexFiber {
  double core_radius = 0.0;  // m
  double n_core = 0.0;
  double n_clad = 0.0;
};

struct StepIndexSolution {
  double n_eff = 0.0;
  double u = 0.0;  // core parameter k a sqrt(n_co^2 - n^2)
  double w = 0.0;  // cladding parameter k a sqrt(n^2 - n_cl^2)
  double residual = 0.0;
};

double v_number(const StepIndexFiber& fiber, double wavelength);

/// Exact vector eigenvalue function of the two-layer fiber, written in a
/// form without poles so every sign change is a root. Zero at guided n_eff.
double characteristic_function(const StepIndexFiber& fiber, double wavelength, const ModeLabel& label,
                               double n_eff);

/// radial_order-th root counted from n_core downward; ModeCutOff when the
/// mode is not guided.
StepIndexSolution solve_step_index_full(const StepIndexFiber& fiber, double wavelength, const ModeLabel& label);
double solve_step_index(double core_radius, double n_core, double n_clad, double wavelength,
                        const ModeLabel& label);

/// All guided roots of the label's family and azimuthal order, highest n_eff first.
std::vector<StepIndexSolution> step_index_roots(const StepIndexFiber& fiber, double wavelength,
                                                const ModeLabel& label);

/// Dominant transverse component on an n x n grid spanning ±half_width
/// (0 selects 3 core radii).
FieldGrid step_index_field(const StepIndexFiber& fiber, const ModeLabel& label, const StepIndexSolution& solution,
                           std::size_t n = 256, double half_width = 0.0);

/// Fiber whose indices follow material dispersion.
struct DispersiveStepIndex {
  double core_radius = 0.0;
  std::function<double(double wavelength)> n_core;
  std::function<double(double wavelength)> n_clad;

  StepIndexFiber at(double wavelength) const { return {core_radius, n_core(wavelength), n_clad(wavelength)}; }
};

/// β(ω) sampled at `samples` frequencies spanning [lambda_min, lambda_max]
/// and splined. ModeCutOff if the mode is cut off anywhere in the band.
GuidedMode step_index_mode(const DispersiveStepIndex& fiber, const ModeLabel& label, double lambda_min,
                           double lambda_max, std::size_t samples = 300);

/// β(ω) solved on demand at every call; exact but slow. Used by scans.
GuidedMode step_index_mode_direct(const DispersiveStepIndex& fiber, const ModeLabel& label, double lambda_min,
                                  double lambda_max);

}  // namespace topdc
