#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support.hpp"
#include "topdc/capillary.hpp"

using namespace topdc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "topdc_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run run_topdc(const std::string& args, const fs::path& dir, const std::string& env = {}) {
  const auto err = dir / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + std::string(TOPDC_BINARY) + "\" " + args +
                          " --quiet 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
#ifdef WEXITSTATUS
  r.code = WEXITSTATUS(status);
#else
  r.code = status;
#endif
  r.err = slurp(err);
  return r;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const auto p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string config(const std::string& name) { return (test::config_dir() / name).string(); }

std::string materials_line() {
  return "[data]\nmaterials = \"" + (test::data_dir() / "materials.toml").generic_string() + "\"\n";
}

std::string without_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("modes: tapered table shape and cut-off row") {
    const auto dir = scratch("modes_taper");
    const auto r = run_topdc("modes --config \"" + config("taper_modes.toml") + "\" --out \"" + dir.string() + "\"", dir);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "modes.json"));
    CHECK(j["modes"].size() == 4);
  }

  TEST_CASE("modes: hollow-core values agree with the library and the golden table") {
    const auto dir = scratch("modes_hollow");
    REQUIRE(run_topdc("modes --config \"" + config("hollow_modes.toml") + "\" --out \"" + dir.string() + "\"", dir).code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "modes.json"));
    const auto gas = test::database().gas_state("xenon", 8e5);
    for (const auto& row : j["modes"]) {
      const auto label = ModeLabel::parse(row["mode"].get<std::string>());
      const double lam = row["wavelength_m"].get<double>();
      CHECK(row["n_eff"].get<double>() == doctest::Approx(capillary_mode(19.35e-6, gas, lam, label)).epsilon(1e-14));
    }
    const auto golden = slurp(fs::path(TOPDC_TEST_GOLDEN_DIR) / "hollow_modes.csv");
    CHECK(without_comments(slurp(dir / "modes.csv")) == golden);
  }

  TEST_CASE("modes: missing material file exits 2 and names the path") {
    const auto dir = scratch("missing_materials");
    const std::string missing = (dir / "nowhere" / "materials.toml").string();
    const auto r = run_topdc("modes --config \"" + config("taper_modes.toml") + "\" --out \"" + dir.string() + "\"", dir,
                         "TOPDC_DATA=\"" + missing + "\"");
    CHECK(r.code == 2);
    CHECK(r.err.find(missing) != std::string::npos);
  }

  TEST_CASE("rate: contradictory cw and seed exits 2") {
    const auto dir = scratch("cw_seed");
    const auto cfg = write_config(dir, "bad.toml", materials_line() + R"(
[platform]
kind = "tapered"
diameter_m = 790e-9

[nonlinear]
chi3_m2_per_v2 = 2.5e-22
a_eff_m2 = 7.89e-12

[process]
cw = true
pump_power_w = 1e6
seed_power_w = 5e5
seed_wavelength_m = 1.6e-6
pulse_duration_s = 20e-12
pump_wavelength_m = 532e-9
fiber_length_m = 0.1
detection_bandwidth_m = 150e-9
)");
    const auto r = run_topdc("rate --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("process.cw") != std::string::npos);
  }

  TEST_CASE("spectral-density: zero resolution exits 2") {
    const auto dir = scratch("grid_zero");
    const auto r = run_topdc("spectral-density --config \"" + config("taper_sweep.toml") + "\" --grid 0 --out \"" +
                             dir.string() + "\"",
                         dir);
    CHECK(r.code == 2);
  }

  TEST_CASE("phase-match: empty range exits 2") {
    const auto dir = scratch("empty_range");
    const auto cfg = write_config(dir, "empty.toml", materials_line() + R"(
[platform]
kind = "tapered"
diameter_m = "phase_matched"

[modes]
pump = "HE12"
triplet = "HE11"

[process]
cw = true
pump_power_w = 0.02
pump_wavelength_m = 532e-9
fiber_length_m = 0.1
detection_bandwidth_m = 150e-9

[scan]
parameter = "diameter"
range = [800e-9, 800e-9]
points = 100
)");
    CHECK(run_topdc("phase-match --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"", dir).code == 2);
  }

  TEST_CASE("phase-match: a range without roots is a valid run") {
    const auto dir = scratch("no_roots");
    const auto cfg = write_config(dir, "none.toml", materials_line() + R"(
[platform]
kind = "tapered"
diameter_m = "phase_matched"

[modes]
pump = "HE12"
triplet = "HE11"

[process]
cw = true
pump_power_w = 0.02
pump_wavelength_m = 532e-9
fiber_length_m = 0.1
detection_bandwidth_m = 150e-9

[scan]
parameter = "diameter"
range = [850e-9, 900e-9]
points = 100
)");
    REQUIRE(run_topdc("phase-match --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"", dir).code == 0);
    CHECK(slurp(dir / "phase_match.json").find("no roots") != std::string::npos);
  }

  TEST_CASE("rate: unconverged quadrature exits 3") {
    const auto dir = scratch("too_coarse");
    const auto cfg = write_config(dir, "coarse.toml", materials_line() + R"(
[platform]
kind = "tapered"
diameter_m = 791e-9

[modes]
pump = "HE12"
triplet = "HE11"
ir_band_m = [1.3e-6, 2.0e-6]

[nonlinear]
chi3_m2_per_v2 = 2.5e-22
a_eff_m2 = 7.89e-12

[process]
cw = true
pump_power_w = 0.02
pump_wavelength_m = 532e-9
fiber_length_m = 0.1
detection_bandwidth_m = 150e-9
grid_resolution = 5
max_resolution = 9
convergence_tolerance = 1e-9
)");
    const auto r = run_topdc("rate --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"", dir);
    CHECK(r.code == 3);
  }

  TEST_CASE("unknown field exits 2 and names it") {
    const auto dir = scratch("unknown_field");
    const auto cfg = write_config(dir, "typo.toml", materials_line() + "[platform]\nkind = \"tapered\"\ndiametr_m = 1e-6\n");
    const auto r = run_topdc("modes --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("diametr_m") != std::string::npos);
  }

  TEST_CASE("taper-check writes a passing report") {
    const auto dir = scratch("taper_check");
    REQUIRE(run_topdc("taper-check --config \"" + config("taper_check.toml") + "\" --out \"" + dir.string() + "\"", dir)
                .code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "taper_check.json"));
    CHECK(j["pass"].get<bool>());
  }

  TEST_CASE("repeated runs are byte-identical") {
    for (const auto& [cmd, cfg] : {std::pair<std::string, std::string>{"modes", "taper_modes.toml"},
                                   {"phase-match", "hollow_pressure_scan.toml"}}) {
      const auto a = scratch("repeat_a");
      const auto b = scratch("repeat_b");
      REQUIRE(run_topdc(cmd + " --config \"" + config(cfg) + "\" --out \"" + a.string() + "\"", a).code == 0);
      REQUIRE(run_topdc(cmd + " --config \"" + config(cfg) + "\" --out \"" + b.string() + "\"", b).code == 0);
      for (const auto& e : fs::directory_iterator(a)) {
        if (e.path().filename() == "stderr.txt") continue;
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
      }
    }
  }
}
