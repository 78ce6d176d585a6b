#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "pipeline.hpp"
#include "topdc/constants.hpp"
#include "topdc/errors.hpp"
#include "topdc/spectral_grid.hpp"
#include "topdc/taper.hpp"

namespace topdc::cli {

namespace {

using json = nlohmann::ordered_json;

bool want_csv(const OutputOptions& o) { return o.format != OutputFormat::json; }
bool want_json(const OutputOptions& o) { return o.format != OutputFormat::csv; }

std::ofstream open_output(const OutputOptions& o, const std::string& name) {
  std::filesystem::create_directories(o.out_dir);
  const auto path = o.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write output file '" + path.string() + "'");
  return out;
}

void write_json(const OutputOptions& o, const std::string& name, const json& j) {
  auto out = open_output(o, name);
  out << j.dump(1) << '\n';
}

std::string num(double v) { return format_double(v); }
std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json provenance(const Pipeline& p, const std::string& command) {
  json j;
  j["command"] = command;
  j["config"] = p.config().source.filename().string();
  j["config_sha256"] = p.config().sha256;
  j["material_data_version"] = p.database().version();
  json d = json::object();
  for (const auto& [k, v] : p.data_hashes()) d[k] = v;
  j["data_sha256"] = d;
  return j;
}

void csv_header(std::ostream& out, const Pipeline& p, const std::string& command) {
  out << "# command: " << command << '\n';
  out << "# config_sha256: " << p.config().sha256 << '\n';
  for (const auto& [k, v] : p.data_hashes()) out << "# data_sha256 " << k << ": " << v << '\n';
}

json state_json(const Pipeline& p, const PlatformState& s) {
  json j;
  j["platform"] = platform_name(p.platform());
  if (std::holds_alternative<TaperedPlatform>(p.platform())) j["diameter_m"] = s.diameter;
  if (std::holds_alternative<HollowPlatform>(p.platform())) j["pressure_pa"] = s.pressure;
  if (s.pump_wavelength > 0.0) {
    j["pump_wavelength_m"] = s.pump_wavelength;
    j["pump_wavelength_nm"] = s.pump_wavelength * 1e9;
  }
  return j;
}

json window_json(const FrequencyWindow& w) {
  json j;
  j["omega1_min_rad_s"] = w.omega1_min;
  j["omega1_max_rad_s"] = w.omega1_max;
  j["omega2_min_rad_s"] = w.omega2_min;
  j["omega2_max_rad_s"] = w.omega2_max;
  return j;
}

ProcessConfig with_grid(ProcessConfig c, const OutputOptions& o) {
  if (o.grid) {
    c.grid_resolution = *o.grid;
    c.max_resolution = std::max(c.max_resolution, c.grid_resolution);
    c.validate();
  }
  return c;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "both") return OutputFormat::both;
  throw InputError("--format must be csv, json or both");
}

void cmd_modes(const RunConfig& config, const OutputOptions& options, std::ostream& log) {
  Pipeline p(config);
  if (!config.modes_report) throw InputError(config.source.string() + ": missing [report] section");
  const auto& r = *config.modes_report;
  if (r.wavelengths.empty() || r.labels.empty()) {
    throw InputError(config.source.string() + ": 'report.wavelengths_m' and 'report.labels' must not be empty");
  }
  const auto s = p.base_state();

  struct Row {
    std::string label;
    double wavelength;
    std::optional<double> n_eff, v_g, loss;
    bool on_resonance = false;
    std::string status = "guided";
  };
  std::vector<Row> rows;
  for (const auto& label : r.labels) {
    for (double lam : r.wavelengths) {
      Row row;
      row.label = label.str();
      row.wavelength = lam;
      try {
        const auto mode = p.mode_near(s, label, lam);
        const double w = constants::angular_frequency(lam);
        row.n_eff = mode.effective_index(w);
        row.v_g = mode.group_velocity(w);
      } catch (const ModeCutOff&) {
        row.status = "cut off";
        rows.push_back(row);
        continue;
      }
      if (label == ModeLabel{ModeFamily::HE, 1, 1}) row.loss = p.loss_db_per_m(s, lam, &row.on_resonance);
      rows.push_back(row);
    }
  }

  if (want_csv(options)) {
    auto out = open_output(options, "modes.csv");
    csv_header(out, p, "modes");
    out << "mode,wavelength_m,wavelength_nm,status,n_eff,group_velocity_m_per_s,loss_db_per_m,on_resonance\n";
    for (const auto& row : rows) {
      out << row.label << ',' << num(row.wavelength) << ',' << num(row.wavelength * 1e9) << ',' << row.status << ','
          << opt(row.n_eff) << ',' << opt(row.v_g) << ',' << opt(row.loss) << ',' << (row.on_resonance ? 1 : 0)
          << '\n';
    }
  }
  if (want_json(options)) {
    auto j = provenance(p, "modes");
    j["state"] = state_json(p, s);
    json arr = json::array();
    for (const auto& row : rows) {
      json e;
      e["mode"] = row.label;
      e["wavelength_m"] = row.wavelength;
      e["wavelength_nm"] = row.wavelength * 1e9;
      e["status"] = row.status;
      e["n_eff"] = opt_json(row.n_eff);
      e["group_velocity_m_per_s"] = opt_json(row.v_g);
      e["loss_db_per_m"] = opt_json(row.loss);
      e["on_resonance"] = row.on_resonance;
      arr.push_back(e);
    }
    j["modes"] = arr;
    write_json(options, "modes.json", j);
  }
  log << "mode        lambda_nm      n_eff              v_g_m_per_s\n";
  for (const auto& row : rows) {
    log << row.label << "  " << num(row.wavelength * 1e9) << "  " << (row.n_eff ? num(*row.n_eff) : row.status) << "  "
        << opt(row.v_g) << '\n';
  }
}

void cmd_phase_match(const RunConfig& config, const OutputOptions& options, std::ostream& log) {
  Pipeline p(config);
  if (!config.scan) throw InputError(config.source.string() + ": missing [scan] section");
  const auto& scan = *config.scan;
  const auto param = scan.spec.parameter;
  const auto start = p.base_state(param);
  auto pumps = scan.pump_modes;
  if (pumps.empty()) pumps.push_back(config.modes.pump);

  struct Record {
    ModeLabel pump;
    std::vector<PhaseMatchSolution> roots;
    std::string status;
  };
  std::vector<Record> records;
  bool any_ok = false;
  for (const auto& pump : pumps) {
    Record rec{pump, {}, "ok"};
    try {
      rec.roots = find_phase_match([&](double v) { return p.direct_problem(p.with(start, param, v), pump); },
                                   scan.spec);
      if (rec.roots.empty()) rec.status = "no roots";
      any_ok = true;
    } catch (const ModeCutOff& e) {
      rec.status = std::string("mode cut off: ") + e.what();
    } catch (const DomainEdge& e) {
      rec.status = std::string("outside mode domain: ") + e.what();
    }
    records.push_back(rec);
  }
  if (!any_ok) throw NumericalError("phase-match: no pump mode could be evaluated over the scan range");

  const std::string unit = param == ScanParameter::pressure ? "pa" : "m";
  if (want_csv(options)) {
    auto out = open_output(options, "phase_match.csv");
    csv_header(out, p, "phase-match");
    out << "# parameter: " << to_string(param) << '\n';
    out << "pump_mode,value_" << unit << ",residual_rad_per_m,slope,degenerate_interval,interval_low,interval_high,status\n";
    for (const auto& rec : records) {
      if (rec.roots.empty()) {
        out << rec.pump.str() << ",,,,,,," << rec.status << '\n';
        continue;
      }
      for (const auto& r : rec.roots) {
        out << rec.pump.str() << ',' << num(r.parameter_value) << ',' << num(r.residual) << ',' << num(r.slope) << ','
            << (r.degenerate_interval ? 1 : 0) << ',' << num(r.interval_low) << ',' << num(r.interval_high) << ','
            << rec.status << '\n';
      }
    }
  }
  if (want_json(options)) {
    auto j = provenance(p, "phase-match");
    j["parameter"] = to_string(param);
    j["range"] = {scan.spec.low, scan.spec.high};
    j["points"] = scan.spec.points;
    if (start.pump_wavelength > 0.0) {
      j["pump_wavelength_m"] = start.pump_wavelength;
      j["pump_wavelength_nm"] = start.pump_wavelength * 1e9;
    }
    json arr = json::array();
    for (const auto& rec : records) {
      json e;
      e["pump_mode"] = rec.pump.str();
      e["status"] = rec.status;
      json roots = json::array();
      for (const auto& r : rec.roots) {
        json x;
        x["value"] = r.parameter_value;
        if (param == ScanParameter::pressure) x["value_bar"] = r.parameter_value / 1e5;
        if (param != ScanParameter::pressure) x["value_nm"] = r.parameter_value * 1e9;
        x["residual_rad_per_m"] = r.residual;
        x["slope"] = r.slope;
        x["degenerate_interval"] = r.degenerate_interval;
        if (r.degenerate_interval) x["interval"] = {r.interval_low, r.interval_high};
        roots.push_back(x);
      }
      e["roots"] = roots;
      arr.push_back(e);
    }
    j["results"] = arr;
    write_json(options, "phase_match.json", j);
  }
  for (const auto& rec : records) {
    log << rec.pump.str() << ": ";
    if (rec.roots.empty()) {
      log << rec.status << '\n';
      continue;
    }
    for (const auto& r : rec.roots) log << num(r.parameter_value) << ' ';
    log << '\n';
  }
}

void cmd_rate(const RunConfig& config, const OutputOptions& options, std::ostream& log) {
  Pipeline p(config);
  const auto s = p.base_state();
  const auto proc = with_grid(p.process(s), options);
  const auto problem = p.triplet_problem(s);

  auto j = provenance(p, "rate");
  j["state"] = state_json(p, s);
  j["process"] = proc.seeded() ? "seeded" : "spontaneous";
  j["pump_mode"] = config.modes.pump.str();
  j["triplet_mode"] = config.modes.triplet.str();
  if (proc.seeded()) j["seed_mode"] = config.modes.seed.str();
  j["pump_power_w"] = proc.pump_power;
  if (proc.seed_power) j["seed_power_w"] = *proc.seed_power;
  if (proc.seed_wavelength) {
    j["seed_wavelength_m"] = *proc.seed_wavelength;
    j["seed_wavelength_nm"] = *proc.seed_wavelength * 1e9;
  }
  j["fiber_length_m"] = proc.fiber_length;
  j["detection_bandwidth_m"] = proc.detection_bandwidth;
  j["detection_bandwidth_nm"] = proc.detection_bandwidth * 1e9;
  j["chi3_m2_per_v2"] = problem.nonlinearity.chi3;
  j["chi3_source"] = p.chi3_note();
  j["a_eff_m2"] = problem.nonlinearity.a_eff;
  j["a_eff_source"] = config.nonlinear.a_eff ? "supplied" : "computed";
  j["nonlinear_phase"] = proc.nonlinear_phase;

  RateResult r;
  std::optional<double> bound;
  if (proc.seeded()) {
    r = seeded_pairs_per_pulse(problem, proc);
  } else {
    r = spontaneous_rate(problem, proc);
    auto upper = proc;
    upper.perfect_phase_matching = true;
    bound = spontaneous_rate(problem, upper).value;
  }
  j["gamma_squared"] = r.gamma_squared;
  j["beta_nl_rad_per_m"] = r.beta_nl;
  j["window"] = window_json(r.window);
  j["resolution"] = r.resolution;
  j["coarse_value"] = r.coarse_value;
  j["relative_change"] = r.relative_change;
  j["masked_area_rad2_per_s2"] = r.masked_area;
  if (proc.seeded()) {
    j["pairs_per_pulse"] = r.value;
    j["pairs_per_second"] = r.pairs_per_second ? json(*r.pairs_per_second) : json(nullptr);
  } else {
    j["rate_hz"] = r.value;
    j["perfect_phase_matching_bound_hz"] = *bound;
  }
  write_json(options, "rate.json", j);
  if (want_csv(options)) {
    auto out = open_output(options, "rate.csv");
    csv_header(out, p, "rate");
    out << "quantity,value,resolution,relative_change\n";
    out << (proc.seeded() ? "pairs_per_pulse" : "rate_hz") << ',' << num(r.value) << ',' << r.resolution << ','
        << num(r.relative_change) << '\n';
    if (bound) out << "perfect_phase_matching_bound_hz," << num(*bound) << ",,\n";
    if (r.pairs_per_second) out << "pairs_per_second," << num(*r.pairs_per_second) << ",,\n";
  }
  if (proc.seeded()) {
    log << "pairs per pulse: " << num(r.value) << '\n';
  } else {
    log << "rate: " << num(r.value) << " Hz (perfect phase matching bound " << num(*bound) << " Hz)\n";
  }
}

void cmd_spectral_density(const RunConfig& config, const OutputOptions& options, std::ostream& log) {
  Pipeline p(config);
  if (!config.sweep) throw InputError(config.source.string() + ": missing [sweep] section");
  const auto& sw = *config.sweep;
  if (sw.values.empty()) throw InputError(config.source.string() + ": 'sweep.values' must not be empty");
  const std::size_t n = options.grid.value_or(sw.grid_resolution);
  if (n < 3) throw InputError("grid resolution must be at least 3");
  const auto base = p.base_state();
  std::filesystem::create_directories(options.out_dir);
  const double origin = sw.relative_to_root ? p.value_of(base, sw.parameter) : 0.0;

  auto summary = provenance(p, "spectral-density");
  summary["parameter"] = to_string(sw.parameter);
  summary["relative_to_root"] = sw.relative_to_root;
  if (sw.relative_to_root) summary["root"] = origin;
  summary["grid_resolution"] = n;
  json points = json::array();
  for (double v : sw.values) {
    const double value = origin + v;
    const auto s = p.with(base, sw.parameter, value);
    const auto proc = p.process(s);
    const auto problem = p.triplet_problem(s);
    SpectralGrid grid;
    if (proc.seeded()) {
      grid = seeded_grid(SeededKernel(problem, proc), centered_window(
          2.0 * constants::wavelength_of(constants::angular_frequency(s.pump_wavelength) -
                                         constants::angular_frequency(*proc.seed_wavelength)),
          proc.detection_bandwidth), n);
    } else {
      grid = spontaneous_grid(SpontaneousKernel(problem, proc), centered_window(3.0 * s.pump_wavelength,
                                                                                proc.detection_bandwidth), n);
    }
    grid.provenance["config_sha256"] = config.sha256;
    grid.provenance["parameter"] = to_string(sw.parameter);
    grid.provenance["value"] = num(value);
    for (const auto& [k, h] : p.data_hashes()) grid.provenance["data_sha256 " + k] = h;
    const auto topo = analyze_topology(grid, sw.center_tolerance);

    const std::string stem = "grid_" + to_string(sw.parameter) + "_" + num(value);
    if (want_csv(options)) write_grid_csv(grid, options.out_dir / (stem + ".csv"));
    if (want_json(options)) write_grid_json(grid, options.out_dir / (stem + ".json"));

    json e;
    e["value"] = value;
    if (sw.relative_to_root) e["offset"] = v;
    e["file_stem"] = stem;
    e["total"] = grid.total;
    e["degenerate"] = topo.degenerate;
    e["peak_lambda1_m"] = constants::wavelength_of(topo.peak_omega1);
    e["peak_lambda2_m"] = constants::wavelength_of(topo.peak_omega2);
    e["extent_m"] = topo.extent;
    e["extent_nm"] = topo.extent * 1e9;
    e["islands"] = topo.islands;
    points.push_back(e);
    log << to_string(sw.parameter) << " " << num(value) << ": " << (topo.degenerate ? "degenerate" : "split")
        << ", extent " << num(topo.extent * 1e9) << " nm, islands " << topo.islands << '\n';
  }
  summary["points"] = points;
  write_json(options, "spectral_density.json", summary);
}

void cmd_taper_check(const RunConfig& config, const OutputOptions& options, std::ostream& log) {
  Pipeline p(config);
  if (!config.taper) throw InputError(config.source.string() + ": missing [taper] section");
  const auto& t = *config.taper;
  const auto profile = TaperProfile::load(t.profile);
  const auto& fs = p.database().fiber(t.fiber);
  const auto& db = p.database();
  TaperFiber fiber;
  fiber.core_radius = fs.core_radius;
  fiber.outer_radius = fs.cladding_radius;
  fiber.core_threshold = t.core_threshold;
  const auto clad = db.material(fs.cladding_material);
  fiber.n_clad = [clad](double lam) { return materials::solid_index(clad, lam); };
  fiber.n_core = [clad, fs](double lam) { return fs.core_index(materials::solid_index(clad, lam)); };
  if (t.environment == "vacuum") {
    fiber.n_env = [](double) { return 1.0; };
  } else {
    const auto gas = db.gas_state(t.environment, constants::reference_pressure, constants::reference_temperature);
    fiber.n_env = [gas](double lam) { return materials::gas_index(gas, lam); };
  }
  const auto report = check_profile(profile, fiber, default_mode_pairs(t.pump_wavelength));

  if (want_json(options)) {
    auto out = open_output(options, "taper_check.json");
    out << report.to_json(config.sha256) << '\n';
  }
  if (want_csv(options)) {
    auto out = open_output(options, "taper_check.csv");
    csv_header(out, p, "taper-check");
    out << "# pass: " << (report.pass ? "true" : "false") << '\n';
    out << "# worst_margin: " << num(report.worst_margin) << '\n';
    out << "z_m,radius_m,angle";
    for (const auto& c : report.pairs) out << ",limit " << c.name;
    out << '\n';
    for (std::size_t i = 0; i < report.z.size(); ++i) {
      out << num(report.z[i]) << ',' << num(report.radius[i]) << ',' << num(report.angle[i]);
      for (const auto& c : report.pairs) out << ',' << (c.limit[i] ? num(*c.limit[i]) : std::string());
      out << '\n';
    }
  }
  log << "taper " << (report.pass ? "PASS" : "FAIL") << ", worst margin " << num(report.worst_margin) << '\n';
  for (const auto& note : report.notes) log << "note: " << note << '\n';
}

int run_command(const std::string& command, const std::filesystem::path& config_path, const OutputOptions& options,
                std::ostream& log, std::ostream& err) {
  try {
    if (options.grid && *options.grid < 3) throw InputError("--grid must be at least 3");
    const auto config = load_run_config(config_path);
    std::ostringstream sink;
    std::ostream& out = options.quiet ? static_cast<std::ostream&>(sink) : log;
    if (command == "modes") {
      cmd_modes(config, options, out);
    } else if (command == "phase-match") {
      cmd_phase_match(config, options, out);
    } else if (command == "rate") {
      cmd_rate(config, options, out);
    } else if (command == "spectral-density") {
      cmd_spectral_density(config, options, out);
    } else if (command == "taper-check") {
      cmd_taper_check(config, options, out);
    } else {
      throw InputError("unknown command '" + command + "'");
    }
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace topdc::cli
