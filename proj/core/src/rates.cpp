#include "topdc/rates.hpp"

#include <algorithm>
#include <cmath>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"
#include "topdc/overlap.hpp"

namespace topdc {

namespace {

// Neumaier-compensated running sum; order-dependent only through the fixed loop order.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

void check_window(const FrequencyWindow& w) {
  if (!(w.omega1_min > 0.0 && w.omega1_max > w.omega1_min && w.omega2_min > 0.0 && w.omega2_max > w.omega2_min)) {
    throw InputError("rate: invalid frequency window");
  }
}

}  // namespace

void ProcessConfig::validate() const {
  if (!(pump_power >= 0.0)) throw InputError("process: pump_power must be >= 0");
  if (seed_power && !(*seed_power >= 0.0)) throw InputError("process: seed_power must be >= 0");
  if (seed_power.has_value() != seed_wavelength.has_value()) {
    throw InputError("process: seed_power and seed_wavelength must be given together");
  }
  if (!(pump_wavelength > 0.0)) throw InputError("process: pump_wavelength must be positive");
  if (!(fiber_length > 0.0)) throw InputError("process: fiber_length must be positive");
  if (!(detection_bandwidth > 0.0)) throw InputError("process: detection_bandwidth must be positive");
  if (pulse_duration && !(*pulse_duration > 0.0)) throw InputError("process: pulse_duration must be positive");
  if (inverse_duty_cycle && !(*inverse_duty_cycle >= 1.0)) throw InputError("process: inverse_duty_cycle must be >= 1");
  if (grid_resolution < 3) throw InputError("process: grid_resolution must be at least 3");
  if (max_resolution < grid_resolution) throw InputError("process: max_resolution below grid_resolution");
  if (!(convergence_tolerance > 0.0)) throw InputError("process: convergence_tolerance must be positive");
}

FrequencyWindow centered_window(double center_wavelength, double bandwidth) {
  if (!(bandwidth > 0.0) || !(center_wavelength > 0.5 * bandwidth)) {
    throw InputError("detection window: bandwidth must be positive and smaller than twice the centre wavelength");
  }
  const double lo = constants::angular_frequency(center_wavelength + 0.5 * bandwidth);
  const double hi = constants::angular_frequency(center_wavelength - 0.5 * bandwidth);
  return {lo, hi, lo, hi};
}

SpontaneousKernel::SpontaneousKernel(const TripletProblem& problem, const ProcessConfig& config)
    : problem_(&problem),
      omega_p_(constants::angular_frequency(config.pump_wavelength)),
      beta_p_(problem.pump.beta(omega_p_)),
      beta_nl_(0.0),
      gamma_sq_(0.0),
      prefactor_(0.0),
      length_(config.fiber_length),
      perfect_(config.perfect_phase_matching) {
  config.validate();
  const auto& nl = problem.nonlinearity;
  const double wd = omega_p_ / 3.0;
  gamma_sq_ = gamma_squared_spontaneous(nl.chi3, omega_p_, problem.pump.effective_index(omega_p_),
                                        problem.mode1.effective_index(wd), problem.mode2.effective_index(wd),
                                        problem.mode3.effective_index(wd), nl.a_eff);
  if (config.nonlinear_phase) beta_nl_ = nonlinear_mismatch(nl.gamma_p, nl.gamma_xpm, config.pump_power);
  prefactor_ = config.pump_power * (constants::hbar / (2.0 * constants::pi * constants::pi)) * gamma_sq_ /
               (omega_p_ * omega_p_);
}

double SpontaneousKernel::delta_beta(double omega1, double omega2) const {
  const double w3 = omega_p_ - (omega1 + omega2);
  return beta_p_ - (problem_->mode1.beta(omega1) + problem_->mode2.beta(omega2)) - problem_->mode3.beta(w3) -
         beta_nl_;
}

double SpontaneousKernel::operator()(double omega1, double omega2) const {
  if (!(omega1 > 0.0 && omega2 > 0.0)) throw InputError("spectral density: frequencies must be positive");
  const double w3 = omega_p_ - (omega1 + omega2);
  if (!(w3 > 0.0)) throw NonPositiveOmega3("spectral density: omega1 + omega2 >= omega_p");
  double f2 = length_ * length_;
  if (!perfect_) {
    const double s = sinc(0.5 * delta_beta(omega1, omega2) * length_);
    f2 *= s * s;
  }
  return prefactor_ * (omega1 * omega2) * w3 * f2;
}

double spectral_density(const TripletProblem& problem, const ProcessConfig& config, double omega1, double omega2) {
  return SpontaneousKernel(problem, config)(omega1, omega2);
}

double pulse_envelope_density(double delta_omega, double duration) {
  if (!(duration > 0.0)) throw InputError("pulse envelope: duration must be positive");
  const double s = sinc(0.5 * delta_omega * duration);
  return duration * duration * s * s;
}

std::pair<double, double> integrate_spontaneous(const SpontaneousKernel& kernel, const FrequencyWindow& window,
                                                std::size_t n) {
  check_window(window);
  if (n < 2) throw InputError("rate: grid needs at least 2 points per axis");
  const double h1 = (window.omega1_max - window.omega1_min) / static_cast<double>(n - 1);
  const double h2 = (window.omega2_max - window.omega2_min) / static_cast<double>(n - 1);
  const double wp = kernel.omega_p();
  Accumulator total;
  std::size_t masked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w1 = window.omega1_min + h1 * static_cast<double>(i);
    Accumulator row;
    for (std::size_t j = 0; j < n; ++j) {
      const double w2 = window.omega2_min + h2 * static_cast<double>(j);
      if (w1 + w2 >= wp) {
        ++masked;
        continue;
      }
      row.add(trapezoid_weight(j, n) * kernel(w1, w2));
    }
    total.add(trapezoid_weight(i, n) * row.value());
  }
  return {total.value() * h1 * h2, static_cast<double>(masked) * h1 * h2};
}

RateResult spontaneous_rate(const TripletProblem& problem, const ProcessConfig& config,
                            std::optional<FrequencyWindow> window) {
  config.validate();
  if (config.seeded()) throw InputError("spontaneous rate: configuration carries a seed");
  const SpontaneousKernel kernel(problem, config);
  RateResult r;
  r.window = window ? *window : centered_window(3.0 * config.pump_wavelength, config.detection_bandwidth);
  r.gamma_squared = kernel.gamma_squared();
  r.beta_nl = kernel.beta_nl();
  if (config.pump_power == 0.0) {
    r.resolution = config.grid_resolution;
    return r;
  }
  std::size_t n = config.grid_resolution;
  auto coarse = integrate_spontaneous(kernel, r.window, n);
  while (true) {
    const std::size_t fine_n = 2 * n - 1;
    if (fine_n > config.max_resolution) {
      throw GridTooCoarse("spontaneous rate: not converged to " + std::to_string(config.convergence_tolerance) +
                          " at " + std::to_string(n) + " points per axis");
    }
    const auto fine = integrate_spontaneous(kernel, r.window, fine_n);
    const double change = std::abs(fine.first - coarse.first) / std::abs(fine.first);
    if (change < config.convergence_tolerance || fine.first == coarse.first) {
      r.value = fine.first;
      r.coarse_value = coarse.first;
      r.relative_change = fine.first == coarse.first ? 0.0 : change;
      r.resolution = fine_n;
      r.masked_area = fine.second;
      return r;
    }
    n = fine_n;
    coarse = fine;
  }
}

SeededKernel::SeededKernel(const TripletProblem& problem, const ProcessConfig& config)
    : problem_(&problem),
      omega_p_(constants::angular_frequency(config.pump_wavelength)),
      omega_s_(0.0),
      beta_p_(0.0),
      beta_s_(0.0),
      beta_nl_(0.0),
      gamma_sq_(0.0),
      prefactor_(0.0),
      length_(config.fiber_length),
      duration_(0.0),
      perfect_(config.perfect_phase_matching) {
  config.validate();
  if (!config.seed_power || !config.seed_wavelength || !(*config.seed_power > 0.0)) {
    throw MissingSeed("seeded rate: a seed with positive power and a wavelength is required");
  }
  if (!config.pulse_duration) throw MissingSeed("seeded rate: pulse_duration is required");
  duration_ = *config.pulse_duration;
  omega_s_ = constants::angular_frequency(*config.seed_wavelength);
  if (!(omega_s_ < omega_p_)) throw InputError("seeded rate: seed frequency must be below the pump frequency");
  beta_p_ = problem.pump.beta(omega_p_);
  beta_s_ = problem.mode3.beta(omega_s_);
  const double wt = omega_p_ - omega_s_;
  const auto& nl = problem.nonlinearity;
  gamma_sq_ = gamma_squared_seeded(nl.chi3, wt, problem.pump.effective_index(omega_p_),
                                   problem.mode1.effective_index(0.5 * wt), problem.mode2.effective_index(0.5 * wt),
                                   problem.mode3.effective_index(omega_s_), nl.a_eff);
  if (config.nonlinear_phase) beta_nl_ = nonlinear_mismatch(nl.gamma_p, nl.gamma_xpm, config.pump_power);
  prefactor_ = config.pump_power * *config.seed_power * gamma_sq_ / (constants::pi * constants::pi * wt * wt);
}

double SeededKernel::delta_beta(double omega1, double omega2) const {
  return beta_p_ - (problem_->mode1.beta(omega1) + problem_->mode2.beta(omega2)) - beta_s_ - beta_nl_;
}

double SeededKernel::operator()(double omega1, double omega2) const {
  if (!(omega1 > 0.0 && omega2 > 0.0)) throw InputError("seeded density: frequencies must be positive");
  if (!(omega_p_ - (omega1 + omega2) > 0.0)) throw NonPositiveOmega3("seeded density: omega1 + omega2 >= omega_p");
  double f2 = length_ * length_;
  if (!perfect_) {
    const double s = sinc(0.5 * delta_beta(omega1, omega2) * length_);
    f2 *= s * s;
  }
  const double rho = pulse_envelope_density(omega_p_ - (omega1 + omega2) - omega_s_, duration_);
  return prefactor_ * (omega1 * omega2) * f2 * rho;
}

namespace {

constexpr double envelope_lobes = 50.0;

// Integral of the seeded density over the window in (Σ = ω1 + ω2, D = ω1 − ω2),
// dω1 dω2 = dΣ dD / 2. D uses nd uniform points; Σ a lattice of step hS
// resolving both the pulse envelope and the phase-matching ridge, limited to
// ±envelope_lobes envelope lobes around exact energy conservation. Both are
// aligned so every (Σ, D) node maps onto one precomputed β lattice per axis.
std::pair<double, double> integrate_seeded(const SeededKernel& k, const FrequencyWindow& win, std::size_t nd,
                                           double subdivision) {
  check_window(win);
  const double t = k.duration();
  const double length = k.length();
  const double wt = k.omega_tilde();
  const auto& pb = k.problem();
  const double inverse_vg = 1.0 / pb.mode1.group_velocity(0.5 * wt);
  const double lobe = 2.0 * constants::pi / t;
  const double hs = std::min(lobe, 2.0 * constants::pi / (length * std::abs(inverse_vg))) / subdivision;

  const double s_lo = std::max(wt - envelope_lobes * lobe, win.omega1_min + win.omega2_min);
  const double s_hi = std::min(wt + envelope_lobes * lobe, win.omega1_max + win.omega2_max);
  if (!(s_hi > s_lo)) return {0.0, 0.0};
  const auto ns = static_cast<std::size_t>(std::floor((s_hi - s_lo) / hs)) + 1;

  const double d_lo = win.omega1_min - win.omega2_max;
  const double d_hi = win.omega1_max - win.omega2_min;
  if (nd % 2 == 0) ++nd;
  const auto half = static_cast<long long>((nd - 1) / 2);
  const auto m = std::max<long long>(1, std::llround((d_hi - d_lo) / (static_cast<double>(nd - 1) * hs)));
  const double hd = static_cast<double>(m) * hs;
  const double dc = 0.5 * (d_lo + d_hi);

  // ω1(k, j) = a0 + q1 hs/2 with q1 = k + (j − half) m; ω2 = b0 + q2 hs/2 with q2 = k − (j − half) m.
  const double a0 = 0.5 * (s_lo + dc);
  const double b0 = 0.5 * (s_lo - dc);
  const long long q_min = -half * m;
  const long long q_max = static_cast<long long>(ns) - 1 + half * m;
  auto lattice = [&](const GuidedMode& mode, double origin, double lo, double hi) {
    std::vector<double> beta(static_cast<std::size_t>(q_max - q_min + 1), std::nan(""));
    for (long long q = q_min; q <= q_max; ++q) {
      const double w = origin + static_cast<double>(q) * 0.5 * hs;
      if (w >= lo && w <= hi) beta[static_cast<std::size_t>(q - q_min)] = mode.beta(w);
    }
    return beta;
  };
  const auto beta1 = lattice(pb.mode1, a0, win.omega1_min, win.omega1_max);
  const auto beta2 = lattice(pb.mode2, b0, win.omega2_min, win.omega2_max);

  std::vector<double> rho(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const double sigma = s_lo + static_cast<double>(s) * hs;
    rho[s] = pulse_envelope_density(k.omega_p() - sigma - k.omega_s(), t);
  }

  const double base = k.beta_p() - k.beta_s() - k.beta_nl();
  const double wp = k.omega_p();
  Accumulator total;
  double masked = 0.0;
  std::vector<double> column;
  for (std::size_t j = 0; j < nd; ++j) {
    const long long shift = (static_cast<long long>(j) - half) * m;
    // Contiguous run of Σ nodes with both frequencies inside the window.
    column.clear();
    Accumulator line;
    std::size_t run = 0;
    double first = 0.0, last = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      const long long q1 = static_cast<long long>(s) + shift;
      const long long q2 = static_cast<long long>(s) - shift;
      const double b1 = beta1[static_cast<std::size_t>(q1 - q_min)];
      const double b2 = beta2[static_cast<std::size_t>(q2 - q_min)];
      if (std::isnan(b1) || std::isnan(b2)) continue;
      const double w1 = a0 + static_cast<double>(q1) * 0.5 * hs;
      const double w2 = b0 + static_cast<double>(q2) * 0.5 * hs;
      if (w1 + w2 >= wp) {
        masked += hs * hd * 0.5;
        continue;
      }
      double f2 = length * length;
      if (!k.perfect()) {
        const double x = sinc(0.5 * (base - (b1 + b2)) * length);
        f2 *= x * x;
      }
      const double v = k.prefactor() * (w1 * w2) * f2 * rho[s];
      if (run == 0) first = v;
      last = v;
      line.add(v);
      ++run;
    }
    if (run < 2) continue;
    const double integral = (line.value() - 0.5 * (first + last)) * hs;
    total.add(trapezoid_weight(j, nd) * integral);
  }
  return {0.5 * hd * total.value(), masked};
}

}  // namespace

RateResult seeded_pairs_per_pulse(const TripletProblem& problem, const ProcessConfig& config,
                                  std::optional<FrequencyWindow> window) {
  const SeededKernel kernel(problem, config);
  RateResult r;
  const double center = constants::wavelength_of(0.5 * kernel.omega_tilde());
  r.window = window ? *window : centered_window(center, config.detection_bandwidth);
  r.gamma_squared = kernel.gamma_squared();
  r.beta_nl = kernel.beta_nl();
  std::size_t nd = config.grid_resolution;
  double sub = 8.0;
  auto coarse = integrate_seeded(kernel, r.window, nd, sub);
  while (true) {
    const std::size_t fine_nd = 2 * nd - 1;
    if (fine_nd > config.max_resolution) {
      throw GridTooCoarse("seeded rate: not converged to " + std::to_string(config.convergence_tolerance) + " at " +
                          std::to_string(nd) + " points");
    }
    const auto fine = integrate_seeded(kernel, r.window, fine_nd, 2.0 * sub);
    const double change = fine.first == coarse.first ? 0.0 : std::abs(fine.first - coarse.first) / std::abs(fine.first);
    if (change < config.convergence_tolerance) {
      r.value = fine.first;
      r.coarse_value = coarse.first;
      r.relative_change = change;
      r.resolution = fine_nd;
      r.masked_area = fine.second;
      if (config.inverse_duty_cycle) r.pairs_per_second = r.value / (kernel.duration() * *config.inverse_duty_cycle);
      return r;
    }
    nd = fine_nd;
    sub *= 2.0;
    coarse = fine;
  }
}

}  // namespace topdc
