#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace topdc {
class TextConfig;
}

namespace topdc::materials {

struct SellmeierTerm {
  double b = 0.0;       // dimensionless oscillator strength
  double c_um2 = 0.0;   // resonance wavelength squared, µm²
};

/// Solid with a Sellmeier dispersion fit, valid on [lambda_min, lambda_max].
struct MaterialModel {
  std::string name;
  std::vector<SellmeierTerm> sellmeier;
  double lambda_min = 0.0;  // m
  double lambda_max = 0.0;  // m
  double chi3 = 0.0;        // m²/V², value used for rate tables
  std::optional<double> chi3_alternate;  // second literature value, kept for reporting
  std::string citation;
};

/// Gas refractivity fit of the form (n - 1) = sum_i A_i / (B_i - λ⁻²), λ in µm,
/// valid at (fit_pressure, fit_temperature). chi3_reference is quoted at the
/// reference state (1 bar, 293.15 K).
struct GasSpecies {
  std::string name;
  std::vector<double> a;       // µm⁻²
  std::vector<double> b;       // µm⁻²
  double fit_pressure = 101325.0;   // Pa
  double fit_temperature = 273.15;  // K
  double chi3_reference = 0.0;      // m²/V² at 1 bar, 293.15 K
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::string citation;
};

struct GasState {
  GasSpecies species;
  double pressure = 0.0;        // Pa
  double temperature = 293.15;  // K
};

/// Two-layer step-index fiber data (core radius plus index step).
struct FiberSpec {
  std::string name;
  double core_radius = 0.0;     // m
  double cladding_radius = 0.0; // m
  std::string cladding_material;
  std::optional<double> numerical_aperture;
  std::optional<double> relative_index_difference;  // Δ = (n_co² − n_cl²)/(2 n_co²)
  std::string citation;

  double core_index(double n_clad) const;
};

double solid_index(const MaterialModel& material, double wavelength);
double gas_refractivity_at_fit(const GasSpecies& species, double wavelength);
double gas_index(const GasState& state, double wavelength);
double effective_chi3(const GasState& state);

/// Ideal-gas density relative to the reference state (1 bar, 293.15 K).
double relative_density(double pressure, double temperature);

/// Immutable collection of materials, gases, and fibers loaded from the
/// material data file.
class MaterialDatabase {
 public:
  static MaterialDatabase load(const std::filesystem::path& path);
  static MaterialDatabase parse(const std::string& text, const std::string& source_name = "<string>");

  const MaterialModel& material(const std::string& name) const;
  const GasSpecies& gas(const std::string& name) const;
  const FiberSpec& fiber(const std::string& name) const;
  GasState gas_state(const std::string& species, double pressure, double temperature = 293.15) const;

  bool has_material(const std::string& name) const { return materials_.count(name) != 0; }
  bool has_gas(const std::string& name) const { return gases_.count(name) != 0; }
  const std::string& version() const { return version_; }

 private:
  static MaterialDatabase from_config(const TextConfig& doc);

  std::string version_;
  std::map<std::string, MaterialModel> materials_;
  std::map<std::string, GasSpecies> gases_;
  std::map<std::string, FiberSpec> fibers_;
};

}  // namespace topdc::materials
