#include "topdc/step_index.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"

namespace topdc {

namespace {

double bessel_j(int n, double x) {
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * std::cyl_bessel_j(static_cast<double>(-n), x);
  return std::cyl_bessel_j(static_cast<double>(n), x);
}

// e^x K_n(x); K_{-n} = K_n.
double bessel_k_scaled(int n, double x) { return gsl_sf_bessel_Kn_scaled(std::abs(n), x); }

struct Scaled {
  double ka;
  double v;
};

Scaled scales(const StepIndexFiber& f, double wavelength) {
  const double ka = 2.0 * constants::pi / wavelength * f.core_radius;
  return {ka, ka * std::sqrt(f.n_core * f.n_core - f.n_clad * f.n_clad)};
}

void validate(const StepIndexFiber& f, double wavelength) {
  if (!(f.core_radius > 0.0)) throw InvalidGeometry("step-index: core radius must be positive");
  if (!(f.n_core > f.n_clad) || !(f.n_clad > 0.0)) throw InvalidGeometry("step-index: requires n_core > n_clad > 0");
  if (!(wavelength > 0.0)) throw InputError("step-index: wavelength must be positive");
}

// Pole-free eigenvalue function in (U, W).
double eigen(const ModeLabel& label, double r, double u, double w) {
  const int nu = label.azimuthal_order;
  const double jn = bessel_j(nu, u);
  const double jp = 0.5 * (bessel_j(nu - 1, u) - bessel_j(nu + 1, u));
  // K'_ν(W) / (W K_ν(W))
  const double b = -0.5 * (bessel_k_scaled(nu - 1, w) + bessel_k_scaled(nu + 1, w)) / (w * bessel_k_scaled(nu, w));
  switch (label.family) {
    case ModeFamily::TE: return jp / u + b * jn;
    case ModeFamily::TM: return jp / u + r * b * jn;
    case ModeFamily::HE:
    case ModeFamily::EH: {
      const double u2 = 1.0 / (u * u);
      const double w2 = 1.0 / (w * w);
      const double big_r = nu * nu * (u2 + w2) * (u2 + r * w2);
      const double half = 0.5 * (1.0 - r) * b;
      const double s = std::sqrt(half * half + big_r);
      const double a = -0.5 * (1.0 + r) * b;
      if (label.family == ModeFamily::EH) return jp / u - (a + s) * jn;
      // a - s = (r b² - R) / (a + s), with b = -ν/W² - q the W⁻⁴ terms cancel exactly.
      const double q = bessel_k_scaled(nu - 1, w) / (w * bessel_k_scaled(nu, w));
      const double num = 2.0 * r * nu * w2 * q + r * q * q - nu * nu * u2 * (u2 + (1.0 + r) * w2);
      return jp / u - num / (a + s) * jn;
    }
  }
  return 0.0;
}

// nullopt when n_eff is not resolvable from n_clad in double precision (at cut-off).
std::optional<StepIndexSolution> make_solution(const StepIndexFiber& f, double wavelength, const ModeLabel& label,
                                               double u, double w) {
  const auto s = scales(f, wavelength);
  StepIndexSolution sol;
  sol.u = u;
  sol.w = w;
  sol.n_eff = w < u ? std::sqrt(f.n_clad * f.n_clad + (w / s.ka) * (w / s.ka))
                    : std::sqrt(f.n_core * f.n_core - (u / s.ka) * (u / s.ka));
  if (!(sol.n_eff > f.n_clad && sol.n_eff < f.n_core)) return std::nullopt;
  sol.residual = eigen(label, (f.n_clad * f.n_clad) / (f.n_core * f.n_core), u, w);
  return sol;
}

// Bisection on whichever of U, W is smaller, so the bracket stays resolvable near U = V.
std::pair<double, double> refine(const ModeLabel& label, double r, double v, double u_lo, double u_hi) {
  auto other = [v](double x) { return std::sqrt(std::max(0.0, v * v - x * x)); };
  const bool in_w = other(u_lo) < u_lo;
  auto f = [&](double x) { return in_w ? eigen(label, r, other(x), x) : eigen(label, r, x, other(x)); };
  double lo = in_w ? other(u_hi) : u_lo;
  double hi = in_w ? other(u_lo) : u_hi;
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  if (std::abs(f(lo)) < std::abs(f(x))) x = lo;
  if (std::abs(f(hi)) < std::abs(f(x))) x = hi;
  return in_w ? std::make_pair(other(x), x) : std::make_pair(x, other(x));
}

template <class Stop>
std::vector<StepIndexSolution> scan(const StepIndexFiber& f, double wavelength, const ModeLabel& label, Stop stop) {
  validate(f, wavelength);
  const auto s = scales(f, wavelength);
  const double r = (f.n_clad * f.n_clad) / (f.n_core * f.n_core);
  const double v = s.v;
  auto h = [&](double u) { return eigen(label, r, u, std::sqrt(v * v - u * u)); };
  const auto samples = static_cast<std::size_t>(std::max(2000.0, 20.0 * v));
  // Uniform in U, then geometric in W towards U = V where weakly guided roots sit.
  std::vector<double> grid;
  grid.reserve(samples + 64);
  for (std::size_t i = 0; i < samples; ++i) grid.push_back(v * (static_cast<double>(i) + 0.5) / static_cast<double>(samples));
  const double u_end = grid.back();
  for (double w = 0.5 * std::sqrt(v * v - u_end * u_end); w > 1e-6; w *= 0.5) grid.push_back(std::sqrt(v * v - w * w));
  std::vector<StepIndexSolution> roots;
  double u_prev = grid.front();
  double h_prev = h(u_prev);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double u = grid[i];
    if (!(u > u_prev)) continue;
    const double hu = h(u);
    if (std::signbit(hu) != std::signbit(h_prev) || hu == 0.0) {
      const auto [ur, wr] = refine(label, r, v, u_prev, u);
      if (auto sol = make_solution(f, wavelength, label, ur, wr)) {
        roots.push_back(*sol);
        if (stop(roots)) return roots;
      }
    }
    u_prev = u;
    h_prev = hu;
  }
  return roots;
}

}  // namespace

double v_number(const StepIndexFiber& fiber, double wavelength) { return scales(fiber, wavelength).v; }

double characteristic_function(const StepIndexFiber& fiber, double wavelength, const ModeLabel& label,
                               double n_eff) {
  const auto s = scales(fiber, wavelength);
  const double u = s.ka * std::sqrt(fiber.n_core * fiber.n_core - n_eff * n_eff);
  const double w = s.ka * std::sqrt(n_eff * n_eff - fiber.n_clad * fiber.n_clad);
  return eigen(label, (fiber.n_clad * fiber.n_clad) / (fiber.n_core * fiber.n_core), u, w);
}

std::vector<StepIndexSolution> step_index_roots(const StepIndexFiber& fiber, double wavelength,
                                                const ModeLabel& label) {
  return scan(fiber, wavelength, label, [](const auto&) { return false; });
}

StepIndexSolution solve_step_index_full(const StepIndexFiber& fiber, double wavelength, const ModeLabel& label) {
  const auto m = static_cast<std::size_t>(label.radial_order);
  auto roots = scan(fiber, wavelength, label, [m](const auto& r) { return r.size() >= m; });
  if (roots.size() < m) {
    throw ModeCutOff("step-index: " + label.str() + " is cut off (V = " + std::to_string(v_number(fiber, wavelength)) +
                     ", " + std::to_string(roots.size()) + " guided modes of this family)");
  }
  return roots[m - 1];
}

double solve_step_index(double core_radius, double n_core, double n_clad, double wavelength, const ModeLabel& label) {
  return solve_step_index_full({core_radius, n_core, n_clad}, wavelength, label).n_eff;
}

FieldGrid step_index_field(const StepIndexFiber& fiber, const ModeLabel& label, const StepIndexSolution& solution,
                           std::size_t n, double half_width) {
  int order = 1;
  if (label.family == ModeFamily::HE) order = label.azimuthal_order - 1;
  if (label.family == ModeFamily::EH) order = label.azimuthal_order + 1;
  const double a = fiber.core_radius;
  const double u = solution.u;
  const double w = solution.w;
  const double ju = bessel_j(order, u);
  const double kw = bessel_k_scaled(order, w);
  const double dx = 2.0 * (half_width > 0.0 ? half_width : 3.0 * a) / static_cast<double>(n);
  return FieldGrid::sample(n, n, dx, dx, [=](double x, double y) {
    const double rr = std::hypot(x, y) / a;
    const double ang = order == 0 ? 1.0 : std::cos(order * std::atan2(y, x));
    double radial;
    if (rr < 1.0) {
      radial = bessel_j(order, u * rr);
    } else {
      radial = ju * bessel_k_scaled(order, w * rr) / kw * std::exp(-w * (rr - 1.0));
    }
    return std::complex<double>(radial * ang, 0.0);
  });
}

GuidedMode step_index_mode(const DispersiveStepIndex& fiber, const ModeLabel& label, double lambda_min,
                           double lambda_max, std::size_t samples) {
  if (!(lambda_min > 0.0 && lambda_max > lambda_min)) throw InputError("step-index mode: invalid wavelength band");
  if (samples < 3) throw InputError("step-index mode: need at least 3 samples");
  const double w_lo = constants::angular_frequency(lambda_max);
  const double w_hi = constants::angular_frequency(lambda_min);
  std::vector<double> omega(samples), beta(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double w = w_lo + (w_hi - w_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double lam = constants::wavelength_of(w);
    omega[i] = w;
    beta[i] = solve_step_index_full(fiber.at(lam), lam, label).n_eff * w / constants::c;
  }
  return GuidedMode::from_samples(label, ModeSource::step_index, std::move(omega), std::move(beta));
}

GuidedMode step_index_mode_direct(const DispersiveStepIndex& fiber, const ModeLabel& label, double lambda_min,
                                  double lambda_max) {
  if (!(lambda_min > 0.0 && lambda_max > lambda_min)) throw InputError("step-index mode: invalid wavelength band");
  auto beta = [fiber, label](double w) {
    const double lam = constants::wavelength_of(w);
    return solve_step_index_full(fiber.at(lam), lam, label).n_eff * w / constants::c;
  };
  return GuidedMode(label, ModeSource::step_index, beta, constants::angular_frequency(lambda_max),
                    constants::angular_frequency(lambda_min));
}

}  // namespace topdc
