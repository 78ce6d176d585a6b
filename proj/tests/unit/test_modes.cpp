#include "doctest.h"

#include <fstream>

#include "support.hpp"
#include "topdc/capillary.hpp"
#include "topdc/dispersion_table.hpp"
#include "topdc/errors.hpp"
#include "topdc/field_grid.hpp"
#include "topdc/spectral_grid.hpp"
#include "topdc/step_index.hpp"

using namespace topdc;
using topdc::test::database;
namespace frozen = topdc::test::frozen;

namespace {

const ModeLabel he11{ModeFamily::HE, 1, 1};
const ModeLabel he12{ModeFamily::HE, 1, 2};

StepIndexFiber rod(double diameter, double lam) {
  return {0.5 * diameter, materials::solid_index(database().material("silica"), lam), 1.0};
}

}  // namespace

TEST_SUITE("modes") {
  TEST_CASE("mode labels") {
    CHECK(ModeLabel::parse("HE12") == he12);
    CHECK(ModeLabel::parse("HE_1_2") == he12);
    CHECK(ModeLabel::parse("TE01").str() == "TE01");
    CHECK_THROWS_AS(ModeLabel(ModeFamily::TE, 1, 1), InputError);
    CHECK_THROWS_AS(ModeLabel(ModeFamily::HE, 1, 0), InputError);
  }

  TEST_CASE("TE01 is cut off just below V = 2.405") {
    const double lam = 1.55e-6;
    const double nco = 1.45, ncl = 1.44;
    const double na = std::sqrt(nco * nco - ncl * ncl);
    const double a_cut = 2.404825557695773 * lam / (2.0 * constants::pi * na);
    CHECK_THROWS_AS(solve_step_index(0.999 * a_cut, nco, ncl, lam, {ModeFamily::TE, 0, 1}), ModeCutOff);
    CHECK(solve_step_index(1.001 * a_cut, nco, ncl, lam, {ModeFamily::TE, 0, 1}) > ncl);
  }

  TEST_CASE("silica rod HE12 matches the classic eigenvalue equation") {
    const auto f = rod(790e-9, 532e-9);
    const auto sol = solve_step_index_full(f, 532e-9, he12);
    CHECK(sol.n_eff == doctest::Approx(frozen::rod790_532nm_he12).epsilon(1e-10));
    CHECK(std::abs(sol.residual) < 1e-10);
    CHECK(solve_step_index_full(f, 532e-9, he11).n_eff == doctest::Approx(frozen::rod790_532nm_he11).epsilon(1e-10));
    CHECK(solve_step_index_full(f, 532e-9, {ModeFamily::EH, 1, 1}).n_eff ==
          doctest::Approx(frozen::rod790_532nm_eh11).epsilon(1e-10));
  }

  TEST_CASE("ray limit") {
    const double n = solve_step_index(200e-6, 1.46, 1.45, 1e-6, he11);
    CHECK(1.46 - n < 1e-3);
    CHECK(n < 1.46);
  }

  TEST_CASE("weakly guided fundamental mode has no cut-off") {
    const StepIndexFiber f{1.0e-6, 1.45, 1.444};
    const auto sol = solve_step_index_full(f, 1.6e-6, he11);
    CHECK(v_number(f, 1.6e-6) < 0.6);
    CHECK(sol.n_eff > 1.444);
  }

  TEST_CASE("capillary index") {
    const auto vac = database().gas_state("xenon", 0.0);
    CHECK(capillary_mode(19.35e-6, vac, 1596e-9, he11) ==
          doctest::Approx(frozen::capillary_he11_vacuum_1596nm).epsilon(1e-14));
    CHECK(capillary_mode_constant(he11) == doctest::Approx(2.404825557695773).epsilon(1e-12));
    CHECK(capillary_mode_constant({ModeFamily::HE, 3, 2}) == doctest::Approx(8.417244140399866).epsilon(1e-12));
    CHECK_THROWS_AS(capillary_mode(1e-6, vac, 1.5e-6, he11), InvalidGeometry);
  }

  TEST_CASE("capillary index approaches the gas index for wide cores") {
    const auto s = database().gas_state("xenon", 5e5);
    const double ng = materials::gas_index(s, 1e-6);
    CHECK(ng - capillary_mode(1.0, s, 1e-6, he11) < 1e-11);
  }

  TEST_CASE("capillary index increases with pressure") {
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double p = 1e5 + 14e5 * i / 49.0;
      const double n = capillary_mode(19.35e-6, database().gas_state("xenon", p), 532e-9, {ModeFamily::HE, 3, 2});
      CHECK(n > prev);
      prev = n;
    }
  }

  TEST_CASE("group velocity of the vacuum line") {
    const auto m = test::vacuum_line(1e15, 2e15);
    CHECK(group_velocity_of(m, 1.5e15) == doctest::Approx(constants::c).epsilon(1e-9));
    CHECK_THROWS_AS(group_velocity_of(m, 2e15), DomainEdge);
    CHECK_THROWS_AS(m.beta(2.1e15), DomainEdge);
  }

  TEST_CASE("capillary group velocity matches the analytic derivative") {
    const auto vac = database().gas_state("xenon", 0.0);
    const double a = 19.35e-6;
    const auto m = capillary_guided_mode(a, vac, he11, 1.2e-6, 2.2e-6);
    const double w = constants::angular_frequency(1596e-9);
    // β = sqrt(ω²/c² − (u/a)²) in vacuum.
    const double u = capillary_mode_constant(he11) / a;
    const double beta = std::sqrt(w * w / (constants::c * constants::c) - u * u);
    const double vg = constants::c * constants::c * beta / w;
    CHECK(group_velocity_of(m, w) == doctest::Approx(vg).epsilon(1e-6));
  }

  TEST_CASE("anti-resonant loss") {
    const double ng = materials::solid_index(database().material("silica"), 1e-6);
    const auto res = resonance_wavelengths(350e-9, ng, 3);
    REQUIRE(res.size() == 3);
    CHECK(res[0] == doctest::Approx(2.0 * 350e-9 * std::sqrt(ng * ng - 1.0)));
    const auto on = antiresonant_loss_estimate(19.35e-6, 350e-9, res[1], ng);
    CHECK(on.on_resonance);
    CHECK(on.nearest_resonance_order == 2);
    const auto small = antiresonant_loss_estimate(19.35e-6, 350e-9, 1596e-9, ng);
    const auto large = antiresonant_loss_estimate(38.7e-6, 350e-9, 1596e-9, ng);
    CHECK_FALSE(small.on_resonance);
    CHECK(large.db_per_m < small.db_per_m);
  }

  TEST_CASE("anti-resonant loss below 1 dB/m at the design wavelengths" * doctest::may_fail()) {
    const auto& silica = database().material("silica");
    for (double lam : {532e-9, 1596e-9}) {
      const auto est = antiresonant_loss_estimate(19.35e-6, 350e-9, lam, materials::solid_index(silica, lam));
      CHECK(est.db_per_m < 1.0);
    }
  }

  TEST_CASE("field grid normalization") {
    const auto g = FieldGrid::gaussian(128, 0.1e-6, 2e-6);
    CHECK(std::abs(g.norm() - 1.0) < 1e-6);
    const auto r = g.resampled(97, 97, 0.13e-6, 0.13e-6);
    CHECK(std::abs(r.norm() - 1.0) < 1e-6);
    const auto f = step_index_field(rod(790e-9, 532e-9), he12, solve_step_index_full(rod(790e-9, 532e-9), 532e-9, he12));
    CHECK(std::abs(f.norm() - 1.0) < 1e-6);
    CHECK_THROWS_AS(FieldGrid(2, 2, 1.0, 1.0, std::vector<std::complex<double>>(4, 0.0)), InputError);
  }

  TEST_CASE("field grid file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "topdc_field_roundtrip.txt";
    const auto g = FieldGrid::gaussian(16, 0.5e-6, 2e-6, 0.3e-6, 0.0);
    g.save(path);
    const auto h = FieldGrid::load(path);
    CHECK(h.same_geometry(g));
    for (std::size_t j = 0; j < 16; ++j) {
      for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(h.at(i, j) - g.at(i, j)) <= 1e-14 * std::abs(g.at(i, j)));
    }
    std::filesystem::remove(path);
  }

  TEST_CASE("dispersion tables") {
    std::string text = "# sample\n# fiber: toy\n# mode: HE11\nwavelength_m,n_eff\n";
    for (int i = 0; i < 10; ++i) text += format_double(1.2e-6 + 0.1e-6 * i) + "," + format_double(1.45 - 0.001 * i) + "\n";
    const auto t = parse_dispersion(text);
    CHECK(t.size() == 10);
    CHECK(t.fiber_id == "toy");
    REQUIRE(t.label.has_value());
    CHECK(*t.label == he11);

    std::string dup = "wavelength_m,n_eff\n";
    for (int i = 0; i < 10; ++i) dup += format_double(1.2e-6 + 0.1e-6 * (i == 5 ? 4 : i)) + ",1.45\n";
    CHECK_THROWS_AS(parse_dispersion(dup), MonotonicityError);

    try {
      parse_dispersion("wavelength_m,n_eff\n1e-6,1.45\n1.1e-6,abc\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_dispersion("wavelength_m,n_eff\n1e-6,1.45\n1.1e-6,1.44\n"), InputError);
  }

  TEST_CASE("shipped hybrid tables load") {
    const auto pump = ingest_dispersion(test::data_dir() / "hybrid_pump_pbg.csv");
    const auto ir = ingest_dispersion(test::data_dir() / "hybrid_ir_fundamental.csv");
    CHECK(pump.size() >= min_table_rows);
    CHECK(ir.size() >= min_table_rows);
    CHECK_FALSE(pump.provenance.empty());
  }

  TEST_CASE("from_samples requires increasing beta") {
    CHECK_THROWS_AS(GuidedMode::from_samples(he11, ModeSource::tabulated, {1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}),
                    MonotonicityError);
  }
}

TEST_SUITE("modes properties") {
  TEST_CASE("every step-index solve has a small residual and bounded index") {
    auto g = test::rng();
    const ModeLabel labels[] = {he11, he12, {ModeFamily::HE, 2, 1}, {ModeFamily::EH, 1, 1}, {ModeFamily::TE, 0, 1},
                                {ModeFamily::TM, 0, 1}, {ModeFamily::HE, 1, 3}};
    int solved = 0;
    for (int i = 0; i < 300; ++i) {
      const double ncl = test::uniform(g, 1.0, 1.5);
      const double nco = ncl + test::log_uniform(g, 1e-3, 0.5);
      const double a = test::log_uniform(g, 0.2e-6, 20e-6);
      const double lam = test::uniform(g, 0.4e-6, 2e-6);
      const auto& label = labels[i % 7];
      try {
        const auto s = solve_step_index_full({a, nco, ncl}, lam, label);
        CHECK(std::abs(s.residual) < 1e-10);
        CHECK(s.n_eff > ncl);
        CHECK(s.n_eff < nco);
        ++solved;
      } catch (const ModeCutOff&) {
      }
    }
    CHECK(solved > 150);
  }

  TEST_CASE("sampled beta is strictly increasing") {
    DispersiveStepIndex f;
    f.core_radius = 395e-9;
    f.n_core = [](double lam) { return materials::solid_index(database().material("silica"), lam); };
    f.n_clad = [](double) { return 1.0; };
    const auto m = step_index_mode(f, he11, 1.3e-6, 2.0e-6, 200);
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double w = m.omega_min() + (m.omega_max() - m.omega_min()) * i / 1000.0;
      CHECK(m.beta(w) > prev);
      prev = m.beta(w);
    }
  }

  TEST_CASE("capillary index stays below the gas index") {
    auto g = test::rng();
    for (int i = 0; i < 300; ++i) {
      const auto s = database().gas_state("xenon", test::uniform(g, 0.0, 2e6));
      const double lam = test::uniform(g, 0.3e-6, 2.2e-6);
      const ModeLabel l{ModeFamily::HE, 1 + i % 5, 1 + i % 3};
      CHECK(capillary_mode(test::uniform(g, 5e-6, 50e-6), s, lam, l) < materials::gas_index(s, lam));
    }
  }

  TEST_CASE("random field grids stay normalized after resampling") {
    auto g = test::rng();
    for (int i = 0; i < 20; ++i) {
      const double w = test::uniform(g, 1e-6, 3e-6);
      const auto f = FieldGrid::gaussian(64, 0.2e-6, w, test::uniform(g, -1e-6, 1e-6), 0.0);
      CHECK(std::abs(f.norm() - 1.0) < 1e-6);
      const auto r = f.resampled(50 + i, 50 + i, test::uniform(g, 0.2e-6, 0.3e-6), 0.25e-6);
      CHECK(std::abs(r.norm() - 1.0) < 1e-6);
    }
  }
}
