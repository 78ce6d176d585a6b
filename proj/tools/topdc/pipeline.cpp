#include "pipeline.hpp"

#include <cmath>

#include "topdc/capillary.hpp"
#include "topdc/constants.hpp"
#include "topdc/errors.hpp"
#include "topdc/hashing.hpp"
#include "topdc/overlap.hpp"
#include "topdc/step_index.hpp"

namespace topdc::cli {

namespace {

materials::MaterialDatabase load_database(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("material data file not found: '" + path.string() + "'");
  return materials::MaterialDatabase::load(path);
}

constexpr double narrow_band = 1e-3;

}  // namespace

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)), db_(load_database(config_.materials_path)) {
  if (config_.platform) {
    if (const auto* h = std::get_if<HybridPlatform>(&*config_.platform)) {
      pump_table_ = ingest_dispersion(h->pump_table);
      ir_table_ = ingest_dispersion(h->ir_table);
    }
  }
}

const FiberPlatform& Pipeline::platform() const {
  if (!config_.platform) throw InputError(config_.source.string() + ": missing [platform] section");
  return *config_.platform;
}

double Pipeline::solid(const std::string& material, double wavelength) const {
  return materials::solid_index(db_.material(material), wavelength);
}

double Pipeline::environment_index(double wavelength) const {
  const auto& t = std::get<TaperedPlatform>(platform());
  if (t.environment == "vacuum") return 1.0;
  return materials::gas_index(db_.gas_state(t.environment, t.environment_pressure, t.environment_temperature),
                              wavelength);
}

materials::GasState Pipeline::hollow_gas(const PlatformState& s) const {
  const auto& h = std::get<HollowPlatform>(platform());
  return db_.gas_state(h.gas, s.pressure, h.temperature);
}

PlatformState Pipeline::with(PlatformState s, ScanParameter p, double value) const {
  switch (p) {
    case ScanParameter::diameter: s.diameter = value; break;
    case ScanParameter::pressure: s.pressure = value; break;
    case ScanParameter::pump_wavelength: s.pump_wavelength = value; break;
    case ScanParameter::none: break;
  }
  return s;
}

double Pipeline::value_of(const PlatformState& s, ScanParameter p) const {
  switch (p) {
    case ScanParameter::diameter: return s.diameter;
    case ScanParameter::pressure: return s.pressure;
    case ScanParameter::pump_wavelength: return s.pump_wavelength;
    case ScanParameter::none: break;
  }
  return 0.0;
}

double Pipeline::phase_matched_value(ScanParameter p, const PlatformState& start, const ModeLabel& pump) const {
  if (!config_.scan || config_.scan->spec.parameter != p) {
    throw InputError(config_.source.string() + ": a \"phase_matched\" " + to_string(p) +
                     " needs a [scan] section over " + to_string(p));
  }
  auto spec = config_.scan->spec;
  spec.omega_fractions.reset();
  const auto roots = find_phase_match([&](double v) { return direct_problem(with(start, p, v), pump); }, spec);
  if (roots.empty()) {
    throw InputError(config_.source.string() + ": no phase-matching " + to_string(p) + " for pump " + pump.str() +
                     " in the [scan] range");
  }
  return roots.front().parameter_value;
}

PlatformState Pipeline::base_state(ScanParameter unresolved) const {
  PlatformState s;
  if (config_.process) s.pump_wavelength = config_.process->pump_wavelength;
  const auto& pf = platform();
  if (const auto* t = std::get_if<TaperedPlatform>(&pf)) {
    if (t->diameter.value) {
      s.diameter = *t->diameter.value;
    } else if (unresolved != ScanParameter::diameter) {
      s.diameter = phase_matched_value(ScanParameter::diameter, s, config_.modes.pump);
    }
  } else if (const auto* h = std::get_if<HollowPlatform>(&pf)) {
    if (h->pressure.value) {
      s.pressure = *h->pressure.value;
    } else if (unresolved != ScanParameter::pressure) {
      s.pressure = phase_matched_value(ScanParameter::pressure, s, config_.modes.pump);
    }
  }
  return s;
}

GuidedMode Pipeline::make_mode(const PlatformState& s, const ModeLabel& label, double lambda_min, double lambda_max,
                               bool sampled) const {
  const auto& pf = platform();
  if (const auto* t = std::get_if<TaperedPlatform>(&pf)) {
    if (!(s.diameter > 0.0)) throw InputError("tapered platform: diameter must be positive");
    DispersiveStepIndex f;
    f.core_radius = 0.5 * s.diameter;
    const std::string material = t->strand_material;
    f.n_core = [this, material](double lam) { return solid(material, lam); };
    f.n_clad = [this](double lam) { return environment_index(lam); };
    if (sampled) return step_index_mode(f, label, lambda_min, lambda_max, config_.modes.samples);
    return step_index_mode_direct(f, label, lambda_min, lambda_max);
  }
  if (const auto* h = std::get_if<HollowPlatform>(&pf)) {
    return capillary_guided_mode(h->core_radius, hollow_gas(s), label, lambda_min, lambda_max);
  }
  (void)sampled;
  const bool is_pump = lambda_max < 1.0e-6;
  return tabulated_mode(is_pump ? *pump_table_ : *ir_table_, label);
}

PhaseMatchProblem Pipeline::direct_problem(const PlatformState& s, const ModeLabel& pump) const {
  if (!(s.pump_wavelength > 0.0)) throw InputError(config_.source.string() + ": process.pump_wavelength_m is required");
  const double lp = s.pump_wavelength;
  const auto& m = config_.modes;
  const bool hybrid = std::holds_alternative<HybridPlatform>(platform());
  auto pm = make_mode(s, pump, lp * (1.0 - narrow_band), hybrid ? 0.99e-6 : lp * (1.0 + narrow_band), false);
  const double lt = 3.0 * lp;
  auto tm = make_mode(s, m.triplet, hybrid ? 1.01e-6 : lt * (1.0 - narrow_band), lt * (1.0 + narrow_band), false);
  PhaseMatchProblem p{pm, tm, tm, tm, constants::angular_frequency(lp), 0.0};
  return p;
}

ProcessConfig Pipeline::process(const PlatformState& s) const {
  if (!config_.process) throw InputError(config_.source.string() + ": missing [process] section");
  auto p = *config_.process;
  p.pump_wavelength = s.pump_wavelength;
  return p;
}

double Pipeline::chi3(const PlatformState& s) const {
  const auto& nl = config_.nonlinear;
  if (nl.chi3_choice == Chi3Choice::value) return nl.chi3;
  const auto& pf = platform();
  if (std::holds_alternative<HollowPlatform>(pf)) return materials::effective_chi3(hollow_gas(s));
  if (nl.chi3_choice == Chi3Choice::gas_effective) {
    throw InputError(config_.source.string() + ": 'nonlinear.chi3_m2_per_v2 = \"gas_effective\"' needs a hollow_core platform");
  }
  if (const auto* t = std::get_if<TaperedPlatform>(&pf)) return db_.material(t->strand_material).chi3;
  return db_.material("sf6").chi3;
}

std::string Pipeline::chi3_note() const {
  switch (config_.nonlinear.chi3_choice) {
    case Chi3Choice::value: return "config value";
    case Chi3Choice::material: return "material data file";
    case Chi3Choice::gas_effective: return "gas reference value scaled to pressure and temperature";
  }
  return "";
}

TripletProblem Pipeline::triplet_problem(const PlatformState& s) const {
  const auto proc = process(s);
  const double lp = s.pump_wavelength;
  const auto& m = config_.modes;
  const bool hybrid = std::holds_alternative<HybridPlatform>(platform());
  auto pm = make_mode(s, m.pump, lp * (1.0 - narrow_band), hybrid ? 0.99e-6 : lp * (1.0 + narrow_band), true);
  auto tm = make_mode(s, m.triplet, m.ir_min, m.ir_max, true);
  GuidedMode sm = m.seed == m.triplet ? tm : make_mode(s, m.seed, m.ir_min, m.ir_max, true);
  TripletProblem p{pm, tm, tm, sm, {}};

  auto& nl = p.nonlinearity;
  nl.chi3 = chi3(s);
  const double wp = constants::angular_frequency(lp);
  std::array<double, 3> wn{wp / 3.0, wp / 3.0, wp / 3.0};
  if (proc.seeded()) {
    const double ws = constants::angular_frequency(*proc.seed_wavelength);
    wn = {0.5 * (wp - ws), 0.5 * (wp - ws), ws};
  }
  OverlapSet areas;
  if (config_.nonlinear.a_eff) {
    areas = supplied_overlaps(*config_.nonlinear.a_eff);
  } else {
    const auto* t = std::get_if<TaperedPlatform>(&platform());
    if (!t) throw InputError(config_.source.string() + ": computed effective areas need a tapered platform");
    const std::size_t n = config_.nonlinear.field_points;
    const double a = 0.5 * s.diameter;
    auto field = [&](const ModeLabel& l, double lam) {
      StepIndexFiber f{a, solid(t->strand_material, lam), environment_index(lam)};
      return step_index_field(f, l, solve_step_index_full(f, lam, l), n, 3.0 * a);
    };
    const auto fp = field(m.pump, lp);
    const auto f1 = field(m.triplet, constants::wavelength_of(wn[0]));
    const auto f3 = field(m.seed, constants::wavelength_of(wn[2]));
    areas = compute_overlaps(fp, f1, f1, f3);
  }
  nl.a_eff = areas.a_eff_4mode;
  const double np = p.pump.effective_index(wp);
  nl.gamma_p = gamma_spm(nl.chi3, wp, np, areas.a_eff_spm);
  const GuidedMode* modes[3] = {&p.mode1, &p.mode2, &p.mode3};
  for (int k = 0; k < 3; ++k) {
    nl.gamma_xpm[k] = gamma_xpm(nl.chi3, wn[k], np, modes[k]->effective_index(wn[k]), areas.a_eff_xpm[k]);
  }
  return p;
}

GuidedMode Pipeline::mode_near(const PlatformState& s, const ModeLabel& label, double wavelength) const {
  if (std::holds_alternative<HybridPlatform>(platform())) {
    return make_mode(s, label, wavelength, wavelength < 1.0e-6 ? 0.99e-6 : 2.0e-6, false);
  }
  return make_mode(s, label, wavelength * (1.0 - narrow_band), wavelength * (1.0 + narrow_band), false);
}

std::optional<double> Pipeline::loss_db_per_m(const PlatformState& s, double wavelength, bool* on_resonance) const {
  (void)s;
  const auto* h = std::get_if<HollowPlatform>(&platform());
  if (!h) return std::nullopt;
  const auto est =
      antiresonant_loss_estimate(h->core_radius, h->wall_thickness, wavelength, solid(h->glass_material, wavelength));
  if (on_resonance) *on_resonance = est.on_resonance;
  if (est.on_resonance) return std::nullopt;
  return est.db_per_m;
}

std::map<std::string, std::string> Pipeline::data_hashes() const {
  std::map<std::string, std::string> out;
  out[config_.materials_path.filename().string()] = sha256_file(config_.materials_path);
  if (config_.platform) {
    if (const auto* h = std::get_if<HybridPlatform>(&*config_.platform)) {
      out[h->pump_table.filename().string()] = sha256_file(h->pump_table);
      out[h->ir_table.filename().string()] = sha256_file(h->ir_table);
    }
  }
  if (config_.taper && std::filesystem::exists(config_.taper->profile)) {
    out[config_.taper->profile.filename().string()] = sha256_file(config_.taper->profile);
  }
  return out;
}

}  // namespace topdc::cli
