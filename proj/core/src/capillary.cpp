#include "topdc/capillary.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <limits>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"

namespace topdc {

double capillary_mode_constant(const ModeLabel& label) {
  int order = 1;
  if (label.family == ModeFamily::HE) order = label.azimuthal_order - 1;
  if (label.family == ModeFamily::EH) order = label.azimuthal_order + 1;
  return gsl_sf_bessel_zero_Jnu(static_cast<double>(order), static_cast<unsigned>(label.radial_order));
}

double capillary_index(double core_radius, double n_gas, double wavelength, double u) {
  if (!(core_radius > wavelength)) throw InvalidGeometry("capillary: core radius must exceed the wavelength");
  const double x = u * wavelength / (2.0 * constants::pi * core_radius * n_gas);
  return n_gas * std::sqrt(1.0 - x * x);
}

double capillary_mode(double core_radius, const materials::GasState& gas, double wavelength, const ModeLabel& label) {
  return capillary_index(core_radius, materials::gas_index(gas, wavelength), wavelength,
                         capillary_mode_constant(label));
}

GuidedMode capillary_guided_mode(double core_radius, const materials::GasState& gas, const ModeLabel& label,
                                 double lambda_min, double lambda_max) {
  if (!(core_radius > lambda_max)) throw InvalidGeometry("capillary: core radius must exceed the wavelength");
  const double u = capillary_mode_constant(label);
  auto beta = [core_radius, gas, u](double omega) {
    const double lam = constants::wavelength_of(omega);
    return capillary_index(core_radius, materials::gas_index(gas, lam), lam, u) * omega / constants::c;
  };
  return GuidedMode(label, ModeSource::capillary, beta, constants::angular_frequency(lambda_max),
                    constants::angular_frequency(lambda_min));
}

std::vector<double> resonance_wavelengths(double wall_thickness, double n_glass, int count) {
  std::vector<double> out;
  for (int j = 1; j <= count; ++j) out.push_back(2.0 * wall_thickness * std::sqrt(n_glass * n_glass - 1.0) / j);
  return out;
}

LossEstimate antiresonant_loss_estimate(double core_radius, double wall_thickness, double wavelength,
                                        double n_glass, double guard_band) {
  if (!(core_radius > 0.0) || !(wall_thickness > 0.0) || !(wavelength > 0.0)) {
    throw InvalidGeometry("loss estimate: lengths must be positive");
  }
  if (!(n_glass > 1.0)) throw InputError("loss estimate: glass index must exceed 1");
  LossEstimate est;
  const double root = std::sqrt(n_glass * n_glass - 1.0);
  // Nearest resonance order to the current wavelength.
  const double j_exact = 2.0 * wall_thickness * root / wavelength;
  const int j = std::max(1, static_cast<int>(std::lround(j_exact)));
  est.nearest_resonance_order = j;
  est.nearest_resonance_wavelength = 2.0 * wall_thickness * root / j;
  if (std::abs(wavelength - est.nearest_resonance_wavelength) <= guard_band * est.nearest_resonance_wavelength) {
    est.on_resonance = true;
    est.db_per_m = std::numeric_limits<double>::infinity();
    return est;
  }
  const double k0 = 2.0 * constants::pi / wavelength;
  const double eps = n_glass * n_glass;
  const double phi = k0 * wall_thickness * root;
  const double cot = std::cos(phi) / std::sin(phi);
  const double u = gsl_sf_bessel_zero_J0(1);
  const double im_n = std::pow(u / (k0 * core_radius), 3) * (1.0 + cot * cot) / (eps - 1.0) * 0.5 * (eps + 1.0);
  // Power attenuation 2 k0 Im(n), in dB.
  est.db_per_m = 10.0 / std::log(10.0) * 2.0 * k0 * im_n;
  return est;
}

}  // namespace topdc
