// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "topdc/constants.hpp"
#include "topdc/materials.hpp"
#include "topdc/step_index.hpp"
#include "topdc/taper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace topdc;

namespace {

const fs::path config_dir = TOPDC_TEST_CONFIG_DIR;
const fs::path work_dir = fs::temp_directory_path() / "topdc_acceptance";

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [out of band]");
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_factor(double value, double target, double factor) {
  return value >= target / factor && value <= target * factor;
}

json slurp_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs one CLI command in-process and returns its summary JSON.
json run(void (*cmd)(const cli::RunConfig&, const cli::OutputOptions&, std::ostream&), const std::string& config,
         const std::string& summary) {
  const auto out = work_dir / fs::path(config).stem();
  fs::remove_all(out);
  fs::create_directories(out);
  cli::OutputOptions opt;
  opt.out_dir = out;
  opt.format = cli::OutputFormat::json;
  std::ostringstream log;
  cmd(cli::load_run_config(config_dir / config), opt, log);
  return slurp_json(out / summary);
}

double rate_of(const std::string& config) { return run(cli::cmd_rate, config, "rate.json")["rate_hz"].get<double>(); }
double pairs_of(const std::string& config) {
  return run(cli::cmd_rate, config, "rate.json")["pairs_per_pulse"].get<double>();
}

void criterion(const std::string& id, const std::string& title, const std::function<void(Outcome&)>& body,
               int& failures) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("error: ") + e.what());
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << id << " " << title << ": " << o.detail.str() << std::endl;
}

void c1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const double rate = rate_of("taper_tableI.toml");
  const double dt = seconds_since(t0);
  o.require(within_factor(rate, 3.2, 5.0), "rate " + fmt(rate) + " Hz vs 3.2 Hz x/÷5");
  o.require(dt < 60.0, "runtime " + fmt(dt) + " s < 60 s");
}

void c2(Outcome& o) {
  const auto j = run(cli::cmd_rate, "hybrid_tableI.toml", "rate.json");
  const double rate = j["rate_hz"].get<double>();
  const double bound = j["perfect_phase_matching_bound_hz"].get<double>();
  o.require(within_factor(rate, 11.0, 5.0), "rate " + fmt(rate) + " Hz vs 11 Hz x/÷5");
  o.require(bound > rate, "bound " + fmt(bound) + " Hz exceeds rate");
  o.require(within_factor(bound, 11.0, 20.0), "bound within x/÷20 of 11 Hz");
}

void c3(Outcome& o) {
  const double rate = rate_of("hollow_tableI.toml");
  o.require(within_factor(rate, 5.5e-6, 10.0), "rate " + fmt(rate) + " Hz vs 5.5e-6 Hz x/÷10");
}

void c4(Outcome& o) {
  const double hybrid = pairs_of("hybrid_tableII.toml");
  const double hollow = pairs_of("hollow_tableII.toml");
  const double taper = pairs_of("taper_tableII.toml");
  o.require(within_factor(hybrid, 9.6e6, 5.0), "hybrid " + fmt(hybrid) + " vs 9.6e6");
  o.require(within_factor(hollow, 0.5, 5.0), "hollow " + fmt(hollow) + " vs 0.5");
  o.require(within_factor(taper, 1.04e8, 5.0), "tapered " + fmt(taper) + " vs 1.04e8");
}

double first_root(const json& j, const std::string& pump) {
  for (const auto& r : j["results"]) {
    if (r["pump_mode"] == pump && !r["roots"].empty()) return r["roots"][0]["value"].get<double>();
  }
  throw std::runtime_error("no root for " + pump);
}

void c5(Outcome& o) {
  const double d = first_root(run(cli::cmd_phase_match, "taper_diameter_scan.toml", "phase_match.json"), "HE12");
  o.require(std::abs(d - 790e-9) <= 10e-9, "diameter " + fmt(d * 1e9) + " nm vs 790 ± 10 nm");

  const double p = first_root(run(cli::cmd_phase_match, "hollow_pressure_scan.toml", "phase_match.json"), "HE32");
  o.require(p >= 5.7e5 && p <= 11.7e5, "xenon " + fmt(p * 1e-5) + " bar in [5.7, 11.7] bar");

  const auto db = materials::MaterialDatabase::load(cli::load_run_config(config_dir / "taper_check.toml").materials_path);
  const auto& smf = db.fiber("smf28");
  const double lam = 532e-9;
  const double ncl = materials::solid_index(db.material("silica"), lam);
  const StepIndexFiber f{smf.core_radius, smf.core_index(ncl), ncl};
  const double k = 2.0 * constants::pi / lam;
  const double period = beat_period(k * solve_step_index_full(f, lam, {ModeFamily::HE, 1, 1}).n_eff,
                                    k * solve_step_index_full(f, lam, {ModeFamily::HE, 1, 2}).n_eff);
  o.require(std::abs(period / 230e-6 - 1.0) <= 0.15, "SMF28 beat " + fmt(period * 1e6) + " µm vs 230 µm ± 15 %");
}

void c6(Outcome& o) {
  const auto taper = run(cli::cmd_spectral_density, "taper_sweep.toml", "spectral_density.json");
  const auto& pts = taper["points"];
  const auto at = [&](double offset) -> const json& {
    for (const auto& p : pts) {
      if (std::abs(p["offset"].get<double>() - offset) < 1e-15) return p;
    }
    throw std::runtime_error("sweep point missing");
  };
  const auto& root = at(0.0);
  o.require(root["degenerate"].get<bool>() && root["islands"].get<int>() == 1,
            "root diameter " + fmt(root["value"].get<double>() * 1e9) + " nm: degenerate, " +
                std::to_string(root["islands"].get<int>()) + " island");
  const auto& split = at(1e-9);
  const double extent = split["extent_m"].get<double>();
  o.require(!split["degenerate"].get<bool>() && std::abs(extent / 130e-9 - 1.0) <= 0.3,
            "+1 nm: split, extent " + fmt(extent * 1e9) + " nm vs 130 nm ± 30 %");

  const auto hollow = run(cli::cmd_spectral_density, "hollow_sweep.toml", "spectral_density.json");
  bool degenerate_at_root = false, non_degenerate_below = false;
  for (const auto& p : hollow["points"]) {
    const double off = p["offset"].get<double>();
    if (off == 0.0) degenerate_at_root = p["degenerate"].get<bool>();
    if (off < 0.0 && !p["degenerate"].get<bool>()) non_degenerate_below = true;
  }
  o.require(degenerate_at_root && non_degenerate_below, "xenon sweep: degenerate at root, non-degenerate below it");
}

void c7(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = std::string("\"") + TOPDC_UNIT_BINARY + "\" --test-suite=\"*properties*\" --minimal > \"" +
                          (work_dir / "properties.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  const double dt = seconds_since(t0);
  o.require(status == 0, "property suites " + std::string(status == 0 ? "passed" : "failed, see properties.txt"));
  o.require(dt < 300.0, "runtime " + fmt(dt) + " s < 300 s");
}

std::string command_for(const std::string& stem) {
  if (stem.find("table") != std::string::npos) return "rate";
  if (stem.find("sweep") != std::string::npos) return "spectral-density";
  if (stem.find("scan") != std::string::npos) return "phase-match";
  if (stem.find("modes") != std::string::npos) return "modes";
  if (stem == "taper_check") return "taper-check";
  return {};
}

std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::directory_iterator(dir)) m[e.path().filename().string()] = slurp(e.path());
  return m;
}

void c8(Outcome& o) {
  int configs = 0;
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(config_dir)) {
    if (e.path().extension() == ".toml") entries.push_back(e.path());
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& path : entries) {
    const auto stem = path.stem().string();
    const auto command = command_for(stem);
    if (command.empty()) {
      o.require(false, stem + ": no command mapping");
      continue;
    }
    std::map<std::string, std::string> runs[2];
    for (int k = 0; k < 2; ++k) {
      const auto out = work_dir / "determinism" / (stem + "_" + std::to_string(k));
      fs::remove_all(out);
      const std::string cmd = std::string("\"") + TOPDC_BINARY + "\" " + command + " --config \"" + path.string() +
                              "\" --out \"" + out.string() + "\" --quiet";
      if (std::system(cmd.c_str()) != 0) {
        o.require(false, stem + ": run failed");
        break;
      }
      runs[k] = outputs(out);
    }
    if (runs[0].empty() || runs[0] != runs[1]) {
      o.require(false, stem + ": outputs differ");
    }
    ++configs;
  }
  o.require(o.pass, std::to_string(configs) + " shipped configs byte-identical across two runs");
}

}  // namespace

int main() {
  fs::create_directories(work_dir);
  int failures = 0;
  criterion("C1", "Table I tapered rate", c1, failures);
  criterion("C2", "Table I hybrid rate and upper bound", c2, failures);
  criterion("C3", "Table I hollow-core rate", c3, failures);
  criterion("C4", "Table II pairs per pulse", c4, failures);
  criterion("C5", "phase-matching landmarks", c5, failures);
  criterion("C6", "spectral topology", c6, failures);
  criterion("C7", "property suite", c7, failures);
  criterion("C8", "determinism", c8, failures);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
