#include "topdc/materials.hpp"

#include <cmath>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"
#include "topdc/text_config.hpp"

namespace topdc::materials {

namespace {

std::string format_um(double wavelength) { return std::to_string(wavelength * 1e6) + " um"; }

}  // namespace

double FiberSpec::core_index(double n_clad) const {
  if (numerical_aperture) return std::sqrt(n_clad * n_clad + *numerical_aperture * *numerical_aperture);
  if (relative_index_difference) return n_clad / std::sqrt(1.0 - 2.0 * *relative_index_difference);
  throw InputError("fiber '" + name + "' has neither numerical_aperture nor relative_index_difference");
}

double solid_index(const MaterialModel& material, double wavelength) {
  if (!(wavelength >= material.lambda_min && wavelength <= material.lambda_max)) {
    throw OutOfRange("solid_index: " + format_um(wavelength) + " outside validity window of '" + material.name +
                     "'");
  }
  const double l2 = (wavelength * 1e6) * (wavelength * 1e6);
  double n2 = 1.0;
  for (const auto& term : material.sellmeier) n2 += term.b * l2 / (l2 - term.c_um2);
  return std::sqrt(n2);
}

double gas_refractivity_at_fit(const GasSpecies& species, double wavelength) {
  if (!(wavelength >= species.lambda_min && wavelength <= species.lambda_max)) {
    throw OutOfRange("gas_index: " + format_um(wavelength) + " outside validity window of '" + species.name + "'");
  }
  const double inv_l2 = 1.0 / ((wavelength * 1e6) * (wavelength * 1e6));
  double refractivity = 0.0;
  for (std::size_t i = 0; i < species.a.size(); ++i) refractivity += species.a[i] / (species.b[i] - inv_l2);
  return refractivity;
}

double relative_density(double pressure, double temperature) {
  return (pressure / constants::reference_pressure) * (constants::reference_temperature / temperature);
}

double gas_index(const GasState& state, double wavelength) {
  if (state.pressure < 0.0) throw InputError("gas_index: negative pressure");
  if (state.pressure == 0.0) return 1.0;
  // Ideal-gas scaling from the fit state to the requested state.
  const double density_ratio =
      (state.pressure / state.species.fit_pressure) * (state.species.fit_temperature / state.temperature);
  return 1.0 + gas_refractivity_at_fit(state.species, wavelength) * density_ratio;
}

double effective_chi3(const GasState& state) {
  if (state.pressure < 0.0) throw InputError("effective_chi3: negative pressure");
  if (state.pressure == 0.0) return 0.0;
  return state.species.chi3_reference * relative_density(state.pressure, state.temperature);
}

MaterialDatabase MaterialDatabase::load(const std::filesystem::path& path) {
  return from_config(TextConfig::load(path));
}

MaterialDatabase MaterialDatabase::parse(const std::string& text, const std::string& source_name) {
  return from_config(TextConfig::parse(text, source_name));
}

MaterialDatabase MaterialDatabase::from_config(const TextConfig& doc) {
  MaterialDatabase db;
  db.version_ = doc.string_or("format_version", "unversioned");
  for (const auto& section : doc.sections()) {
    const auto dot = section.find('.');
    if (dot == std::string::npos) continue;
    const std::string kind = section.substr(0, dot);
    const std::string name = section.substr(dot + 1);
    const std::string p = section + ".";
    if (kind == "material") {
      MaterialModel m;
      m.name = name;
      const auto b = doc.numbers(p + "sellmeier_b");
      const auto c = doc.numbers(p + "sellmeier_c_um2");
      if (b.size() != c.size()) {
        throw ParseError(doc.source(), doc.line_of(p + "sellmeier_c_um2"), "sellmeier_b and sellmeier_c_um2 differ in length");
      }
      for (std::size_t i = 0; i < b.size(); ++i) m.sellmeier.push_back({b[i], c[i]});
      m.lambda_min = doc.number(p + "lambda_min_m");
      m.lambda_max = doc.number(p + "lambda_max_m");
      m.chi3 = doc.number_or(p + "chi3_m2_per_v2", 0.0);
      m.chi3_alternate = doc.optional_number(p + "chi3_alternate_m2_per_v2");
      m.citation = doc.string_or(p + "citation", "");
      db.materials_.emplace(name, std::move(m));
    } else if (kind == "gas") {
      GasSpecies g;
      g.name = name;
      g.a = doc.numbers(p + "refractivity_a");
      g.b = doc.numbers(p + "refractivity_b");
      if (g.a.size() != g.b.size()) {
        throw ParseError(doc.source(), doc.line_of(p + "refractivity_b"), "refractivity_a and refractivity_b differ in length");
      }
      g.fit_pressure = doc.number(p + "fit_pressure_pa");
      g.fit_temperature = doc.number(p + "fit_temperature_k");
      g.chi3_reference = doc.number(p + "chi3_reference_m2_per_v2");
      g.lambda_min = doc.number(p + "lambda_min_m");
      g.lambda_max = doc.number(p + "lambda_max_m");
      g.citation = doc.string_or(p + "citation", "");
      db.gases_.emplace(name, std::move(g));
    } else if (kind == "fiber") {
      FiberSpec f;
      f.name = name;
      f.core_radius = doc.number(p + "core_radius_m");
      f.cladding_radius = doc.number(p + "cladding_radius_m");
      f.cladding_material = doc.string(p + "cladding_material");
      f.numerical_aperture = doc.optional_number(p + "numerical_aperture");
      f.relative_index_difference = doc.optional_number(p + "relative_index_difference");
      f.citation = doc.string_or(p + "citation", "");
      db.fibers_.emplace(name, std::move(f));
    }
  }
  return db;
}

const MaterialModel& MaterialDatabase::material(const std::string& name) const {
  auto it = materials_.find(name);
  if (it == materials_.end()) throw InputError("unknown material '" + name + "'");
  return it->second;
}

const GasSpecies& MaterialDatabase::gas(const std::string& name) const {
  auto it = gases_.find(name);
  if (it == gases_.end()) throw UnknownSpecies("unknown gas species '" + name + "'");
  return it->second;
}

const FiberSpec& MaterialDatabase::fiber(const std::string& name) const {
  auto it = fibers_.find(name);
  if (it == fibers_.end()) throw InputError("unknown fiber '" + name + "'");
  return it->second;
}

GasState MaterialDatabase::gas_state(const std::string& species, double pressure, double temperature) const {
  if (pressure < 0.0) throw InputError("gas pressure must be >= 0");
  if (!(temperature > 0.0)) throw InputError("gas temperature must be > 0");
  return GasState{gas(species), pressure, temperature};
}

}  // namespace topdc::materials
