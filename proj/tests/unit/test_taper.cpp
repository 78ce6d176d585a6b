#include "doctest.h"

#include <algorithm>

#include "support.hpp"
#include "topdc/errors.hpp"
#include "topdc/step_index.hpp"
#include "topdc/taper.hpp"

using namespace topdc;
using topdc::test::database;

namespace {

const ModeLabel he11{ModeFamily::HE, 1, 1};
const ModeLabel he12{ModeFamily::HE, 1, 2};

double silica(double lam) { return materials::solid_index(database().material("silica"), lam); }

TaperFiber smf28() {
  const auto& spec = database().fiber("smf28");
  TaperFiber f;
  f.core_radius = spec.core_radius;
  f.outer_radius = spec.cladding_radius;
  f.n_clad = silica;
  f.n_core = [spec](double lam) { return spec.core_index(silica(lam)); };
  f.n_env = [](double) { return 1.0; };
  return f;
}

StepIndexFiber untapered(const std::string& name, double lam) {
  const auto& spec = database().fiber(name);
  const double ncl = silica(lam);
  return {spec.core_radius, spec.core_index(ncl), ncl};
}

// Radii from r0 down to r1 with constant slope `angle`.
TaperProfile linear_taper(double r0, double r1, double angle, std::size_t n) {
  TaperProfile p;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = r0 + (r1 - r0) * static_cast<double>(i) / static_cast<double>(n - 1);
    p.radius.push_back(r);
    p.z.push_back((r0 - r) / angle);
  }
  return p;
}

double min_limit(const AdiabaticityReport& rep) {
  double lim = std::numeric_limits<double>::infinity();
  for (const auto& c : rep.pairs) {
    for (const auto& v : c.limit) {
      if (v) lim = std::min(lim, *v);
    }
  }
  return lim;
}

}  // namespace

TEST_SUITE("taper") {
  TEST_CASE("adiabatic limit examples") {
    CHECK(adiabatic_limit(1e-6, 5.0, 5.0) == 0.0);
    CHECK(adiabatic_limit(1e-6, 2.0 * constants::pi * 1e5, 0.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_THROWS_AS(adiabatic_limit(0.0, 1.0, 2.0), InputError);
  }

  TEST_CASE("beat period examples") {
    CHECK(beat_period(2.0 * constants::pi, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(beat_period(10.0, 10.0 + 2.0 * constants::pi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(beat_period(3.0, 3.0), DegenerateModes);
    const auto line = test::vacuum_line(1e15, 2e15);
    CHECK_THROWS_AS(beat_period(line, line, 1.5e15), DegenerateModes);
  }

  TEST_CASE("SMF28 beat period at 532 nm") {
    const double lam = 532e-9;
    const auto f = untapered("smf28", lam);
    const double k = 2.0 * constants::pi / lam;
    const double b1 = k * solve_step_index_full(f, lam, he11).n_eff;
    const double b2 = k * solve_step_index_full(f, lam, he12).n_eff;
    const double period = beat_period(b1, b2);
    CHECK(period > 0.85 * 230e-6);
    CHECK(period < 1.15 * 230e-6);
  }

  TEST_CASE("constant radius passes") {
    TaperProfile p;
    for (int i = 0; i < 20; ++i) {
      p.z.push_back(i * 1e-4);
      p.radius.push_back(20e-6);
    }
    const auto rep = check_profile(p, smf28(), default_mode_pairs(532e-9));
    CHECK(rep.pass);
    for (double a : rep.angle) CHECK(a == 0.0);
    CHECK(std::isinf(rep.worst_margin));
  }

  TEST_CASE("taper steeper than every limit fails") {
    const auto probe = check_profile(linear_taper(30e-6, 2e-6, 1e-3, 40), smf28(), default_mode_pairs(532e-9));
    double max_lim = 0.0;
    for (const auto& c : probe.pairs) {
      for (const auto& v : c.limit) {
        if (v) max_lim = std::max(max_lim, *v);
      }
    }
    const auto rep = check_profile(linear_taper(30e-6, 2e-6, 10.0 * max_lim, 40), smf28(), default_mode_pairs(532e-9));
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_margin < 1.0);
  }

  TEST_CASE("touching the limit is a failure") {
    const auto pairs = default_mode_pairs(532e-9);
    const auto probe = check_profile(linear_taper(30e-6, 2e-6, 1e-3, 40), smf28(), pairs);
    const double lim = min_limit(probe);
    const auto above = check_profile(linear_taper(30e-6, 2e-6, lim * (1.0 + 1e-9), 40), smf28(), pairs);
    const auto below = check_profile(linear_taper(30e-6, 2e-6, lim * (1.0 - 1e-9), 40), smf28(), pairs);
    CHECK_FALSE(above.pass);
    CHECK(below.pass);
    CHECK(above.worst_margin == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(below.worst_margin == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("verdict agrees with the pointwise comparison") {
    const auto rep = check_profile(TaperProfile::load(test::config_dir() / "taper_profile.csv"), smf28(),
                                   default_mode_pairs(532e-9));
    bool pass = true;
    for (std::size_t i = 0; i < rep.z.size(); ++i) {
      for (const auto& c : rep.pairs) {
        if (c.limit[i] && !(rep.angle[i] < *c.limit[i])) pass = false;
      }
    }
    CHECK(rep.pass == pass);
    CHECK(rep.pass);
  }

  TEST_CASE("profile errors") {
    TaperProfile p{{0.0, 1e-3}, {10e-6, 9e-6}};
    CHECK_THROWS_AS(check_profile(p, smf28(), default_mode_pairs(532e-9)), ProfileTooShort);
    CHECK_THROWS_AS(TaperProfile::parse("z_m,radius_m\n0,1e-6\n0,2e-6\n1e-3,1e-6\n"), MonotonicityError);
    CHECK_THROWS_AS(TaperProfile::parse("z_m,radius_m\n0,1e-6\n1e-4,-2e-6\n2e-4,1e-6\n"), InputError);
  }

  TEST_CASE("default mode pairs") {
    const auto pairs = default_mode_pairs(532e-9);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[1].wavelength == doctest::Approx(1596e-9));
    CHECK(pairs[2].a.label == he12);
    CHECK(pairs[0].name() == "HE11-HE12@532nm");
  }

  TEST_CASE("launch overlap of identical and orthogonal modes") {
    const double lam = 532e-9;
    const auto f = untapered("smf28", lam);
    const auto s11 = solve_step_index_full(f, lam, he11);
    const auto s12 = solve_step_index_full(f, lam, he12);
    const auto a = step_index_field(f, he11, s11, 256, 12e-6);
    const auto b = step_index_field(f, he12, s12, 256, 12e-6);
    CHECK(launch_overlap(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(launch_overlap(a, b) < 1e-6);
    const auto c = step_index_field(f, he11, s11, 128, 12e-6);
    CHECK_THROWS_AS(launch_overlap(a, c), GridMismatch);
  }

  TEST_CASE("460HP to SMF28 launch into HE12 is comparable to HE11" * doctest::may_fail()) {
    const double lam = 532e-9;
    const auto hp = untapered("460hp", lam);
    const auto smf = untapered("smf28", lam);
    const auto in = step_index_field(hp, he11, solve_step_index_full(hp, lam, he11), 256, 12e-6);
    const auto o11 = step_index_field(smf, he11, solve_step_index_full(smf, lam, he11), 256, 12e-6);
    const auto o12 = step_index_field(smf, he12, solve_step_index_full(smf, lam, he12), 256, 12e-6);
    const double ratio = launch_overlap(in, o12) / launch_overlap(in, o11);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
  }

  TEST_CASE("HE12-HE13 limit falls toward smaller radii while HE12 is core guided") {
    const auto f = smf28();
    const auto pair = default_mode_pairs(532e-9)[2];
    std::vector<double> radii;
    for (int i = 0; i < 20; ++i) radii.push_back(40e-6 + 22.5e-6 * i / 19.0);
    const auto lim = limit_curve(f, pair, radii);
    for (std::size_t i = 1; i < lim.size(); ++i) {
      REQUIRE(lim[i].has_value());
      REQUIRE(lim[i - 1].has_value());
    }
    CHECK(*lim.front() < *lim.back());
    int falls = 0;
    for (std::size_t i = 1; i < lim.size(); ++i) falls += *lim[i] < *lim[i - 1];
    CHECK(falls == 0);
  }
}

TEST_SUITE("taper properties") {
  TEST_CASE("adiabatic limit symmetry and linearity") {
    auto g = test::rng();
    for (int i = 0; i < 1000; ++i) {
      const double r = test::log_uniform(g, 1e-7, 1e-4);
      const double a = test::uniform(g, 1e6, 2e7), b = test::uniform(g, 1e6, 2e7);
      CHECK(adiabatic_limit(r, a, b) == adiabatic_limit(r, b, a));
      CHECK(adiabatic_limit(3.0 * r, a, b) == doctest::Approx(3.0 * adiabatic_limit(r, a, b)).epsilon(1e-14));
      if (a != b) CHECK(beat_period(a, b) == beat_period(b, a));
    }
  }

  TEST_CASE("launch overlap symmetric and phase invariant") {
    auto g = test::rng();
    for (int i = 0; i < 20; ++i) {
      const auto a = FieldGrid::gaussian(64, 0.1e-6, test::uniform(g, 0.8e-6, 2e-6), test::uniform(g, -1e-6, 1e-6));
      const auto b = FieldGrid::gaussian(64, 0.1e-6, test::uniform(g, 0.8e-6, 2e-6));
      const auto phase = std::polar(1.0, test::uniform(g, 0.0, 6.28));
      std::vector<std::complex<double>> rotated(b.values().begin(), b.values().end());
      for (auto& v : rotated) v *= phase;
      const FieldGrid br(b.nx(), b.ny(), b.dx(), b.dy(), rotated);
      const double ab = launch_overlap(a, b);
      CHECK(ab == doctest::Approx(launch_overlap(b, a)).epsilon(1e-12));
      CHECK(ab == doctest::Approx(launch_overlap(a, br)).epsilon(1e-12));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
    }
  }

  TEST_CASE("halving the length doubles every local angle") {
    auto p = TaperProfile::load(test::config_dir() / "taper_profile.csv");
    const auto a = local_angle(p);
    for (double& z : p.z) z *= 0.5;
    const auto b = local_angle(p);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(2.0 * a[i]).epsilon(1e-12));
  }
}
