#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "topdc/rates.hpp"

namespace topdc {

/// S(ω1, ω2) sampled on a uniform grid. values[i * n2 + j] belongs to
/// (omega1[i], omega2[j]); masked cells (ω1 + ω2 >= ω_p) hold 0 and mask 1.
struct SpectralGrid {
  std::vector<double> omega1;
  std::vector<double> omega2;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  double omega_p = 0.0;
  double total = 0.0;        // trapezoid integral of `values`
  double masked_area = 0.0;  // (rad/s)²
  std::string quantity;      // "spontaneous" or "seeded"
  std::map<std::string, std::string> provenance;

  double at(std::size_t i, std::size_t j) const { return values[i * omega2.size() + j]; }
};

SpectralGrid spontaneous_grid(const SpontaneousKernel& kernel, const FrequencyWindow& window, std::size_t n);
/// Seeded density on a uniform grid, for plotting. `total` here is the plain
/// grid trapezoid; the converged pair number comes from seeded_pairs_per_pulse.
SpectralGrid seeded_grid(const SeededKernel& kernel, const FrequencyWindow& window, std::size_t n);

struct GridTopology {
  bool degenerate = false;    // global maximum at ω1 = ω2 = ω_p/3 (seeded: on ω1 = ω2)
  double peak_omega1 = 0.0;
  double peak_omega2 = 0.0;
  double extent = 0.0;        // m, λ1 span where the ω2-marginal is >= half its maximum
  std::size_t islands = 0;    // contiguous λ1 runs above half maximum
};

/// `center_tolerance` is a fraction of the window half width on each axis.
GridTopology analyze_topology(const SpectralGrid& grid, double center_tolerance = 0.02);

struct SweepPoint {
  TripletProblem problem;
  ProcessConfig config;
  FrequencyWindow window;
};

/// One spontaneous grid per sweep value.
std::vector<SpectralGrid> grid_sweep(const std::function<SweepPoint(double)>& build,
                                     const std::vector<double>& sweep, std::size_t n);

/// Header comment lines, then `omega1_rad_s,omega2_rad_s,S,masked`.
void write_grid_csv(const SpectralGrid& grid, const std::filesystem::path& path);
/// Axes, row-major values, mask, total, provenance.
void write_grid_json(const SpectralGrid& grid, const std::filesystem::path& path);
std::string grid_json(const SpectralGrid& grid);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace topdc
