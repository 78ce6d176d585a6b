#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "topdc/errors.hpp"
#include "topdc/hashing.hpp"
#include "topdc/text_config.hpp"

#ifndef TOPDC_DEFAULT_MATERIALS
#define TOPDC_DEFAULT_MATERIALS "data/materials.toml"
#endif

namespace topdc::cli {

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"", {"title", "description"}},
      {"data", {"materials"}},
      {"platform",
       {"kind", "diameter_m", "strand_material", "environment", "environment_pressure_pa",
        "environment_temperature_k", "core_radius_m", "wall_thickness_m", "glass_material", "gas", "pressure_pa",
        "temperature_k", "pump_table", "ir_table"}},
      {"modes", {"pump", "triplet", "seed", "ir_band_m", "samples"}},
      {"nonlinear", {"chi3_m2_per_v2", "a_eff_m2", "field_points"}},
      {"process",
       {"pump_power_w", "pump_wavelength_m", "fiber_length_m", "detection_bandwidth_m", "grid_resolution",
        "max_resolution", "convergence_tolerance", "nonlinear_phase", "cw", "seed_power_w", "seed_wavelength_m",
        "pulse_duration_s", "inverse_duty_cycle", "perfect_phase_matching"}},
      {"scan",
       {"parameter", "range", "points", "omega_fractions", "tolerance_rad_per_m", "max_iterations", "pump_modes",
        "bessel_orders", "bessel_roots"}},
      {"sweep", {"parameter", "values", "relative_to_root", "grid_resolution", "center_tolerance"}},
      {"report", {"wavelengths_m", "labels"}},
      {"taper", {"profile", "fiber", "environment", "pump_wavelength_m", "core_threshold_m"}},
  };
  return keys;
}

std::string field_error(const TextConfig& doc, const std::string& key, const std::string& what) {
  const auto line = doc.has(key) ? ":" + std::to_string(doc.line_of(key)) : std::string();
  return doc.source() + line + ": '" + key + "' " + what;
}

void check_keys(const TextConfig& doc) {
  const auto& keys = allowed_keys();
  for (const auto& section : doc.sections()) {
    if (!keys.count(section)) throw InputError(doc.source() + ": unknown section [" + section + "]");
  }
  std::vector<std::string> all = doc.sections();
  all.insert(all.begin(), "");
  for (const auto& section : all) {
    auto it = keys.find(section);
    if (it == keys.end()) continue;
    for (const auto& k : doc.keys_in(section)) {
      if (!it->second.count(k)) {
        throw InputError(doc.source() + ":" + std::to_string(doc.line_of(section.empty() ? k : section + "." + k)) +
                         ": unknown key '" + (section.empty() ? k : section + "." + k) + "'");
      }
    }
  }
}

double positive(const TextConfig& doc, const std::string& key) {
  const double v = doc.number(key);
  if (!(v > 0.0)) throw InputError(field_error(doc, key, "must be positive"));
  return v;
}

std::size_t count(const TextConfig& doc, const std::string& key, std::size_t fallback, std::size_t minimum) {
  if (!doc.has(key)) return fallback;
  const double v = doc.number(key);
  if (!(v >= static_cast<double>(minimum)) || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw InputError(field_error(doc, key, "must be an integer >= " + std::to_string(minimum)));
  }
  return static_cast<std::size_t>(v);
}

ModeLabel label(const TextConfig& doc, const std::string& key, const ModeLabel& fallback) {
  if (!doc.has(key)) return fallback;
  try {
    return ModeLabel::parse(doc.string(key));
  } catch (const InputError& e) {
    throw InputError(field_error(doc, key, e.what()));
  }
}

Resolvable resolvable(const TextConfig& doc, const std::string& key) {
  if (!doc.has(key)) throw InputError(doc.source() + ": missing key '" + key + "'");
  if (doc.is_string(key)) {
    if (doc.string(key) != "phase_matched") throw InputError(field_error(doc, key, "must be a number or \"phase_matched\""));
    return {};
  }
  const double v = doc.number(key);
  if (!(v >= 0.0)) throw InputError(field_error(doc, key, "must be >= 0"));
  return {v};
}

std::pair<double, double> interval(const TextConfig& doc, const std::string& key) {
  const auto v = doc.numbers(key);
  if (v.size() != 2 || !(v[1] > v[0])) throw InputError(field_error(doc, key, "must be [low, high] with low < high"));
  return {v[0], v[1]};
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal();
}

FiberPlatform parse_platform(const TextConfig& doc, const std::filesystem::path& base) {
  const std::string kind = doc.string("platform.kind");
  if (kind == "tapered") {
    TaperedPlatform p;
    p.diameter = resolvable(doc, "platform.diameter_m");
    p.strand_material = doc.string_or("platform.strand_material", p.strand_material);
    p.environment = doc.string_or("platform.environment", p.environment);
    p.environment_pressure = doc.number_or("platform.environment_pressure_pa", 0.0);
    p.environment_temperature = doc.number_or("platform.environment_temperature_k", 293.15);
    if (p.diameter.value && !(*p.diameter.value > 0.0)) {
      throw InputError(field_error(doc, "platform.diameter_m", "must be positive"));
    }
    return p;
  }
  if (kind == "hollow_core") {
    HollowPlatform p;
    p.core_radius = positive(doc, "platform.core_radius_m");
    p.wall_thickness = positive(doc, "platform.wall_thickness_m");
    p.glass_material = doc.string_or("platform.glass_material", p.glass_material);
    p.gas = doc.string_or("platform.gas", p.gas);
    p.pressure = resolvable(doc, "platform.pressure_pa");
    p.temperature = doc.number_or("platform.temperature_k", 293.15);
    if (!(p.temperature > 0.0)) throw InputError(field_error(doc, "platform.temperature_k", "must be positive"));
    return p;
  }
  if (kind == "hybrid") {
    HybridPlatform p;
    p.pump_table = resolve_path(base, doc.string("platform.pump_table"));
    p.ir_table = resolve_path(base, doc.string("platform.ir_table"));
    return p;
  }
  throw InputError(field_error(doc, "platform.kind", "must be one of tapered, hollow_core, hybrid"));
}

ProcessConfig parse_process(const TextConfig& doc) {
  ProcessConfig p;
  p.pump_power = doc.number("process.pump_power_w");
  if (!(p.pump_power >= 0.0)) throw InputError(field_error(doc, "process.pump_power_w", "must be >= 0"));
  p.pump_wavelength = positive(doc, "process.pump_wavelength_m");
  p.fiber_length = positive(doc, "process.fiber_length_m");
  p.detection_bandwidth = positive(doc, "process.detection_bandwidth_m");
  p.grid_resolution = count(doc, "process.grid_resolution", p.grid_resolution, 3);
  p.max_resolution = count(doc, "process.max_resolution", std::max(p.max_resolution, p.grid_resolution), 3);
  p.convergence_tolerance = doc.number_or("process.convergence_tolerance", p.convergence_tolerance);
  p.nonlinear_phase = doc.boolean_or("process.nonlinear_phase", false);
  p.perfect_phase_matching = doc.boolean_or("process.perfect_phase_matching", false);
  p.seed_power = doc.optional_number("process.seed_power_w");
  p.seed_wavelength = doc.optional_number("process.seed_wavelength_m");
  p.pulse_duration = doc.optional_number("process.pulse_duration_s");
  p.inverse_duty_cycle = doc.optional_number("process.inverse_duty_cycle");
  const bool cw = doc.boolean_or("process.cw", false);
  if (cw && (p.seed_power || p.seed_wavelength || p.pulse_duration)) {
    throw InputError(field_error(doc, "process.cw", "contradicts the seed/pulse settings in [process]"));
  }
  if (p.seed_power.has_value() != p.seed_wavelength.has_value()) {
    throw InputError(doc.source() + ": 'process.seed_power_w' and 'process.seed_wavelength_m' must be given together");
  }
  try {
    p.validate();
  } catch (const InputError& e) {
    throw InputError(doc.source() + ": " + e.what());
  }
  return p;
}

ScanSettings parse_scan(const TextConfig& doc) {
  ScanSettings s;
  s.spec.parameter = parse_scan_parameter(doc.string("scan.parameter"));
  if (s.spec.parameter == ScanParameter::none) throw InputError(field_error(doc, "scan.parameter", "must name a parameter"));
  const auto range = doc.numbers("scan.range");
  if (range.size() != 2) throw InputError(field_error(doc, "scan.range", "must be [low, high]"));
  s.spec.low = range[0];
  s.spec.high = range[1];
  s.spec.points = count(doc, "scan.points", 100, 2);
  s.spec.tolerance = doc.number_or("scan.tolerance_rad_per_m", 1e-3);
  s.spec.max_iterations = static_cast<int>(count(doc, "scan.max_iterations", 80, 1));
  if (doc.has("scan.omega_fractions")) {
    const auto f = doc.numbers("scan.omega_fractions");
    if (f.size() != 2) throw InputError(field_error(doc, "scan.omega_fractions", "must be [f1, f2]"));
    s.spec.omega_fractions = std::make_pair(f[0], f[1]);
  }
  if (doc.has("scan.pump_modes")) {
    for (const auto& m : doc.strings("scan.pump_modes")) s.pump_modes.push_back(ModeLabel::parse(m));
  }
  if (doc.has("scan.bessel_orders") || doc.has("scan.bessel_roots")) {
    const auto orders = count(doc, "scan.bessel_orders", 6, 1);
    const auto roots = count(doc, "scan.bessel_roots", 3, 1);
    for (std::size_t k = 0; k < orders; ++k) {
      for (std::size_t m = 1; m <= roots; ++m) {
        s.pump_modes.emplace_back(ModeFamily::HE, static_cast<int>(k + 1), static_cast<int>(m));
      }
    }
  }
  return s;
}

}  // namespace

std::string platform_name(const FiberPlatform& p) {
  if (std::holds_alternative<TaperedPlatform>(p)) return "tapered";
  if (std::holds_alternative<HollowPlatform>(p)) return "hollow_core";
  return "hybrid";
}

std::filesystem::path default_materials_path() {
  if (const char* env = std::getenv("TOPDC_DATA"); env && *env) return env;
  return TOPDC_DEFAULT_MATERIALS;
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& source) {
  const auto doc = TextConfig::parse(text, source.string());
  check_keys(doc);
  const auto base = source.has_parent_path() ? source.parent_path() : std::filesystem::path(".");
  RunConfig cfg;
  cfg.source = source;
  cfg.sha256 = sha256_hex(text);

  if (const char* env = std::getenv("TOPDC_DATA"); env && *env) {
    cfg.materials_path = env;
  } else if (doc.has("data.materials")) {
    cfg.materials_path = resolve_path(base, doc.string("data.materials"));
  } else {
    cfg.materials_path = TOPDC_DEFAULT_MATERIALS;
  }

  if (doc.has_section("platform")) cfg.platform = parse_platform(doc, base);

  cfg.modes.pump = label(doc, "modes.pump", cfg.modes.pump);
  cfg.modes.triplet = label(doc, "modes.triplet", cfg.modes.triplet);
  cfg.modes.seed = label(doc, "modes.seed", cfg.modes.triplet);
  if (doc.has("modes.ir_band_m")) std::tie(cfg.modes.ir_min, cfg.modes.ir_max) = interval(doc, "modes.ir_band_m");
  cfg.modes.samples = count(doc, "modes.samples", cfg.modes.samples, 8);

  if (doc.has("nonlinear.chi3_m2_per_v2")) {
    if (doc.is_string("nonlinear.chi3_m2_per_v2")) {
      const auto& v = doc.string("nonlinear.chi3_m2_per_v2");
      if (v == "material") {
        cfg.nonlinear.chi3_choice = Chi3Choice::material;
      } else if (v == "gas_effective") {
        cfg.nonlinear.chi3_choice = Chi3Choice::gas_effective;
      } else {
        throw InputError(field_error(doc, "nonlinear.chi3_m2_per_v2", "must be a number, \"material\" or \"gas_effective\""));
      }
    } else {
      cfg.nonlinear.chi3 = doc.number("nonlinear.chi3_m2_per_v2");
      if (!(cfg.nonlinear.chi3 >= 0.0)) throw InputError(field_error(doc, "nonlinear.chi3_m2_per_v2", "must be >= 0"));
    }
  } else {
    cfg.nonlinear.chi3_choice = Chi3Choice::material;
  }
  if (doc.has("nonlinear.a_eff_m2")) {
    if (doc.is_string("nonlinear.a_eff_m2")) {
      if (doc.string("nonlinear.a_eff_m2") != "computed") {
        throw InputError(field_error(doc, "nonlinear.a_eff_m2", "must be a number or \"computed\""));
      }
    } else {
      cfg.nonlinear.a_eff = positive(doc, "nonlinear.a_eff_m2");
    }
  }
  cfg.nonlinear.field_points = count(doc, "nonlinear.field_points", cfg.nonlinear.field_points, 16);

  if (doc.has_section("process")) cfg.process = parse_process(doc);
  if (doc.has_section("scan")) cfg.scan = parse_scan(doc);
  if (doc.has_section("sweep")) {
    SweepSettings s;
    s.parameter = parse_scan_parameter(doc.string("sweep.parameter"));
    s.values = doc.numbers("sweep.values");
    s.relative_to_root = doc.boolean_or("sweep.relative_to_root", false);
    s.grid_resolution = count(doc, "sweep.grid_resolution", s.grid_resolution, 3);
    s.center_tolerance = doc.number_or("sweep.center_tolerance", s.center_tolerance);
    cfg.sweep = s;
  }
  if (doc.has_section("report")) {
    ModesReportSettings r;
    r.wavelengths = doc.numbers("report.wavelengths_m");
    for (double w : r.wavelengths) {
      if (!(w > 0.0)) throw InputError(field_error(doc, "report.wavelengths_m", "must hold positive wavelengths"));
    }
    for (const auto& l : doc.strings("report.labels")) r.labels.push_back(ModeLabel::parse(l));
    cfg.modes_report = r;
  }
  if (doc.has_section("taper")) {
    TaperSettings t;
    t.profile = resolve_path(base, doc.string("taper.profile"));
    t.fiber = doc.string_or("taper.fiber", t.fiber);
    t.environment = doc.string_or("taper.environment", t.environment);
    t.pump_wavelength = doc.number_or("taper.pump_wavelength_m", t.pump_wavelength);
    t.core_threshold = doc.number_or("taper.core_threshold_m", t.core_threshold);
    cfg.taper = t;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path);
}

}  // namespace topdc::cli
