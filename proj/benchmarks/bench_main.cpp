#include <benchmark/benchmark.h>

#include <filesystem>

#include "topdc/capillary.hpp"
#include "topdc/constants.hpp"
#include "topdc/materials.hpp"
#include "topdc/spectral_grid.hpp"
#include "topdc/step_index.hpp"

using namespace topdc;

namespace {

const materials::MaterialDatabase& db() {
  static const auto d = materials::MaterialDatabase::load(std::filesystem::path(TOPDC_BENCH_DATA_DIR) / "materials.toml");
  return d;
}

double silica(double lam) { return materials::solid_index(db().material("silica"), lam); }

DispersiveStepIndex rod(double diameter) {
  DispersiveStepIndex f;
  f.core_radius = 0.5 * diameter;
  f.n_core = silica;
  f.n_clad = [](double) { return 1.0; };
  return f;
}

void step_index_solve(benchmark::State& state) {
  const StepIndexFiber f{395e-9, silica(532e-9), 1.0};
  const ModeLabel label{ModeFamily::HE, 1, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_step_index_full(f, 532e-9, label));
}
BENCHMARK(step_index_solve)->Arg(1)->Arg(2);

void step_index_sampled_mode(benchmark::State& state) {
  const auto f = rod(790e-9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_index_mode(f, {ModeFamily::HE, 1, 1}, 1.3e-6, 2.0e-6, 300));
  }
}
BENCHMARK(step_index_sampled_mode)->Unit(benchmark::kMillisecond);

void capillary_index(benchmark::State& state) {
  const auto gas = db().gas_state("xenon", 8e5);
  for (auto _ : state) benchmark::DoNotOptimize(capillary_mode(19.35e-6, gas, 532e-9, {ModeFamily::HE, 3, 2}));
}
BENCHMARK(capillary_index);

void spontaneous_spectral_grid(benchmark::State& state) {
  const auto f = rod(790.37e-9);
  const double lp = 532e-9;
  const auto ir = step_index_mode(f, {ModeFamily::HE, 1, 1}, 1.3e-6, 2.0e-6, 300);
  TripletProblem problem{step_index_mode(f, {ModeFamily::HE, 1, 2}, 0.999 * lp, 1.001 * lp, 20), ir, ir, ir, {}};
  problem.nonlinearity.chi3 = 2.5e-22;
  problem.nonlinearity.a_eff = 7.89e-12;
  ProcessConfig cfg;
  cfg.pump_power = 0.02;
  cfg.pump_wavelength = lp;
  cfg.fiber_length = 0.1;
  cfg.detection_bandwidth = 150e-9;
  const SpontaneousKernel kernel(problem, cfg);
  const auto window = centered_window(3.0 * lp, cfg.detection_bandwidth);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spontaneous_grid(kernel, window, n));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n * n));
}
BENCHMARK(spontaneous_spectral_grid)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
