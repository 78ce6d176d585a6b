#include "topdc/spectral_grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "topdc/constants.hpp"
#include "topdc/errors.hpp"

namespace topdc {

namespace {

std::vector<double> axis(double lo, double hi, std::size_t n) {
  std::vector<double> a(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) a[i] = lo + h * static_cast<double>(i);
  return a;
}

template <class Kernel>
SpectralGrid fill(const Kernel& kernel, const FrequencyWindow& w, std::size_t n, const char* quantity) {
  if (n < 2) throw InputError("spectral grid: resolution must be at least 2");
  SpectralGrid g;
  g.quantity = quantity;
  g.omega_p = kernel.omega_p();
  g.omega1 = axis(w.omega1_min, w.omega1_max, n);
  g.omega2 = axis(w.omega2_min, w.omega2_max, n);
  g.values.assign(n * n, 0.0);
  g.mask.assign(n * n, 0);
  const double h1 = g.omega1[1] - g.omega1[0];
  const double h2 = g.omega2[1] - g.omega2[0];
  double total = 0.0;
  std::size_t masked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g.omega1[i] + g.omega2[j] >= g.omega_p) {
        g.mask[i * n + j] = 1;
        ++masked;
        continue;
      }
      const double v = kernel(g.omega1[i], g.omega2[j]);
      g.values[i * n + j] = v;
      row += ((j == 0 || j + 1 == n) ? 0.5 : 1.0) * v;
    }
    total += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * row;
  }
  g.total = total * h1 * h2;
  g.masked_area = static_cast<double>(masked) * h1 * h2;
  return g;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

SpectralGrid spontaneous_grid(const SpontaneousKernel& kernel, const FrequencyWindow& window, std::size_t n) {
  return fill(kernel, window, n, "spontaneous");
}

SpectralGrid seeded_grid(const SeededKernel& kernel, const FrequencyWindow& window, std::size_t n) {
  return fill(kernel, window, n, "seeded");
}

GridTopology analyze_topology(const SpectralGrid& grid, double center_tolerance) {
  const std::size_t n1 = grid.omega1.size();
  const std::size_t n2 = grid.omega2.size();
  GridTopology t;
  if (n1 < 2 || n2 < 2) return t;
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (grid.at(i, j) > best) {
        best = grid.at(i, j);
        bi = i;
        bj = j;
      }
    }
  }
  t.peak_omega1 = grid.omega1[bi];
  t.peak_omega2 = grid.omega2[bj];
  const double hw1 = 0.5 * (grid.omega1.back() - grid.omega1.front());
  const double hw2 = 0.5 * (grid.omega2.back() - grid.omega2.front());
  if (grid.quantity == "seeded") {
    t.degenerate = std::abs(t.peak_omega1 - t.peak_omega2) <= center_tolerance * std::min(hw1, hw2);
  } else {
    const double third = grid.omega_p / 3.0;
    t.degenerate = std::abs(t.peak_omega1 - third) <= center_tolerance * hw1 &&
                   std::abs(t.peak_omega2 - third) <= center_tolerance * hw2;
  }

  std::vector<double> marginal(n1, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) marginal[i] += grid.at(i, j);
  }
  const double peak = *std::max_element(marginal.begin(), marginal.end());
  if (!(peak > 0.0)) return t;
  double lam_lo = 0.0, lam_hi = 0.0;
  bool inside = false, any = false;
  for (std::size_t i = 0; i < n1; ++i) {
    const bool above = marginal[i] >= 0.5 * peak;
    if (above) {
      const double lam = constants::wavelength_of(grid.omega1[i]);
      if (!any) lam_lo = lam_hi = lam;
      lam_lo = std::min(lam_lo, lam);
      lam_hi = std::max(lam_hi, lam);
      any = true;
      if (!inside) ++t.islands;
    }
    inside = above;
  }
  t.extent = lam_hi - lam_lo;
  return t;
}

std::vector<SpectralGrid> grid_sweep(const std::function<SweepPoint(double)>& build,
                                     const std::vector<double>& sweep, std::size_t n) {
  std::vector<SpectralGrid> out;
  out.reserve(sweep.size());
  for (double v : sweep) {
    const auto point = build(v);
    const SpontaneousKernel kernel(point.problem, point.config);
    out.push_back(spontaneous_grid(kernel, point.window, n));
  }
  return out;
}

void write_grid_csv(const SpectralGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  for (const auto& [k, v] : grid.provenance) out << "# " << k << ": " << v << '\n';
  out << "# quantity: " << grid.quantity << '\n';
  out << "# total: " << format_double(grid.total) << '\n';
  out << "omega1_rad_s,omega2_rad_s,S,masked\n";
  const std::size_t n2 = grid.omega2.size();
  for (std::size_t i = 0; i < grid.omega1.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      out << format_double(grid.omega1[i]) << ',' << format_double(grid.omega2[j]) << ','
          << format_double(grid.values[i * n2 + j]) << ',' << static_cast<int>(grid.mask[i * n2 + j]) << '\n';
    }
  }
}

std::string grid_json(const SpectralGrid& grid) {
  nlohmann::ordered_json j;
  j["quantity"] = grid.quantity;
  j["omega_p_rad_s"] = grid.omega_p;
  j["total"] = grid.total;
  j["masked_area_rad2_s2"] = grid.masked_area;
  j["shape"] = {grid.omega1.size(), grid.omega2.size()};
  j["omega1_rad_s"] = grid.omega1;
  j["omega2_rad_s"] = grid.omega2;
  j["values"] = grid.values;
  j["mask"] = grid.mask;
  nlohmann::ordered_json prov = nlohmann::ordered_json::object();
  for (const auto& [k, v] : grid.provenance) prov[k] = v;
  j["provenance"] = prov;
  return j.dump(1);
}

void write_grid_json(const SpectralGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << grid_json(grid) << '\n';
}

}  // namespace topdc
