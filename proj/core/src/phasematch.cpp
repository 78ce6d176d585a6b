#include "topdc/phasematch.hpp"

#include <algorithm>
#include <cmath>

#include "topdc/errors.hpp"

namespace topdc {

double delta_beta(const PhaseMatchProblem& problem, double omega1, double omega2, double omega3) {
  const double wp = problem.pump_frequency;
  if (std::abs(omega1 + omega2 + omega3 - wp) > energy_tolerance * wp) {
    throw EnergyNotConserved("delta_beta: omega1 + omega2 + omega3 differs from the pump frequency");
  }
  return problem.pump.beta(wp) - problem.mode1.beta(omega1) - problem.mode2.beta(omega2) -
         problem.mode3.beta(omega3) - problem.beta_nl;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

std::complex<double> phase_matching_function(double delta_beta, double length) {
  if (!(length > 0.0)) throw InputError("phase matching function: length must be positive");
  const double half = 0.5 * delta_beta * length;
  return length * sinc(half) * std::polar(1.0, half);
}

std::string to_string(ScanParameter p) {
  switch (p) {
    case ScanParameter::pressure: return "pressure";
    case ScanParameter::diameter: return "diameter";
    case ScanParameter::pump_wavelength: return "pump_wavelength";
    case ScanParameter::none: return "none";
  }
  return "none";
}

ScanParameter parse_scan_parameter(const std::string& text) {
  if (text == "pressure") return ScanParameter::pressure;
  if (text == "diameter") return ScanParameter::diameter;
  if (text == "pump_wavelength") return ScanParameter::pump_wavelength;
  if (text == "none") return ScanParameter::none;
  throw InputError("unknown scan parameter '" + text + "'");
}

double scan_delta_beta(const ProblemFactory& factory, const ScanSpec& spec, double parameter) {
  const auto problem = factory(parameter);
  const double wp = problem.pump_frequency;
  double w1 = wp / 3.0, w2 = wp / 3.0;
  if (spec.omega_fractions) {
    w1 = spec.omega_fractions->first * wp;
    w2 = spec.omega_fractions->second * wp;
  }
  const double w3 = wp - (w1 + w2);
  if (!(w1 > 0.0 && w2 > 0.0 && w3 > 0.0)) throw InputError("scan: evaluation frequencies must be positive");
  return delta_beta(problem, w1, w2, w3);
}

std::vector<PhaseMatchSolution> find_phase_match(const ProblemFactory& factory, const ScanSpec& spec) {
  if (!(spec.high > spec.low) || !std::isfinite(spec.low) || !std::isfinite(spec.high)) {
    throw NoRoot("phase-match scan: empty or invalid parameter range");
  }
  if (spec.points < 100) throw NoRoot("phase-match scan: grid must have at least 100 points");
  const bool degenerate_point = !spec.omega_fractions.has_value();
  auto eval = [&](double p) { return scan_delta_beta(factory, spec, p); };
  const std::size_t n = spec.points;
  std::vector<double> grid(n), value(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = spec.low + (spec.high - spec.low) * static_cast<double>(i) / static_cast<double>(n - 1);
    value[i] = eval(grid[i]);
  }
  const double step = (spec.high - spec.low) / static_cast<double>(n - 1);
  auto slope_at = [&](double p) {
    const double h = 1e-4 * step;
    const double lo = std::max(spec.low, p - h);
    const double hi = std::min(spec.high, p + h);
    return (eval(hi) - eval(lo)) / (hi - lo);
  };
  auto is_zero = [&](double v) { return std::abs(v) < spec.tolerance; };

  std::vector<PhaseMatchSolution> out;
  std::size_t i = 0;
  while (i < n) {
    if (is_zero(value[i])) {
      std::size_t j = i;
      while (j + 1 < n && is_zero(value[j + 1])) ++j;
      PhaseMatchSolution s;
      s.degenerate = degenerate_point;
      if (j > i) {
        s.degenerate_interval = true;
        s.interval_low = grid[i];
        s.interval_high = grid[j];
        s.parameter_value = 0.5 * (grid[i] + grid[j]);
        s.residual = eval(s.parameter_value);
        s.slope = 0.0;
      } else {
        s.parameter_value = grid[i];
        s.residual = value[i];
        s.slope = slope_at(grid[i]);
        s.interval_low = s.interval_high = grid[i];
      }
      out.push_back(s);
      i = j + 1;
      continue;
    }
    if (i + 1 < n && !is_zero(value[i + 1]) && std::signbit(value[i]) != std::signbit(value[i + 1])) {
      double lo = grid[i], hi = grid[i + 1], flo = value[i];
      double mid = 0.5 * (lo + hi), fm = 0.0;
      for (int it = 0; it < spec.max_iterations; ++it) {
        mid = 0.5 * (lo + hi);
        fm = eval(mid);
        if (is_zero(fm) && (hi - lo) < 1e-12 * std::max(std::abs(lo), std::abs(hi))) break;
        if (fm == 0.0) break;
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        if (!(0.5 * (lo + hi) > lo && 0.5 * (lo + hi) < hi)) break;
      }
      PhaseMatchSolution s;
      s.parameter_value = mid;
      s.residual = fm;
      s.slope = slope_at(mid);
      s.degenerate = degenerate_point;
      s.interval_low = s.interval_high = mid;
      out.push_back(s);
    }
    ++i;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.parameter_value < b.parameter_value; });
  return out;
}

}  // namespace topdc
