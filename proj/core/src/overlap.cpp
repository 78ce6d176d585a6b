#include "topdc/overlap.hpp"

#include <cmath>
#include <complex>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"

namespace topdc {

namespace {

void require_same(const FieldGrid& a, const FieldGrid& b) {
  if (!a.same_geometry(b)) throw GridMismatch("overlap: field grids do not share nx, ny, dx, dy");
}

}  // namespace

double effective_area_4mode(const FieldGrid& fp, const FieldGrid& f1, const FieldGrid& f2, const FieldGrid& f3,
                            bool absolute) {
  require_same(fp, f1);
  require_same(fp, f2);
  require_same(fp, f3);
  const auto p = fp.values();
  const auto a = f1.values();
  const auto b = f2.values();
  const auto c = f3.values();
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += p[k] * std::conj(a[k]) * std::conj(b[k]) * std::conj(c[k]);
  sum *= fp.dx() * fp.dy();
  const double value = absolute ? std::abs(sum) : sum.real();
  if (!(value > 0.0)) {
    throw NonPositiveOverlap("overlap: four-mode integral is not positive (" + std::to_string(sum.real()) + ")");
  }
  return 1.0 / value;
}

double effective_area_spm(const FieldGrid& fp) {
  double sum = 0.0;
  for (const auto& z : fp.values()) {
    const double i = std::norm(z);
    sum += i * i;
  }
  return 1.0 / (sum * fp.dx() * fp.dy());
}

double effective_area_xpm(const FieldGrid& fp, const FieldGrid& fn) {
  require_same(fp, fn);
  const auto p = fp.values();
  const auto n = fn.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += std::norm(p[k]) * std::norm(n[k]);
  if (!(sum > 0.0)) throw DisjointModes("overlap: pump and triplet fields have disjoint support");
  return 1.0 / (sum * fp.dx() * fp.dy());
}

OverlapSet compute_overlaps(const FieldGrid& fp, const FieldGrid& f1, const FieldGrid& f2, const FieldGrid& f3,
                            bool absolute) {
  OverlapSet s;
  s.a_eff_4mode = effective_area_4mode(fp, f1, f2, f3, absolute);
  s.a_eff_spm = effective_area_spm(fp);
  s.a_eff_xpm = {effective_area_xpm(fp, f1), effective_area_xpm(fp, f2), effective_area_xpm(fp, f3)};
  s.source = AreaSource::computed;
  return s;
}

OverlapSet supplied_overlaps(double a_eff) {
  if (!(a_eff > 0.0)) throw InputError("overlap: supplied effective area must be positive");
  OverlapSet s;
  s.a_eff_4mode = a_eff;
  s.a_eff_spm = a_eff;
  s.a_eff_xpm = {a_eff, a_eff, a_eff};
  s.source = AreaSource::supplied;
  return s;
}

double gamma_spm(double chi3, double omega_p, double n_p, double a_spm) {
  using namespace constants;
  return 3.0 * chi3 * omega_p / (4.0 * epsilon0 * c * c * n_p * n_p * a_spm);
}

double gamma_xpm(double chi3, double omega_n, double n_p, double n_n, double a_xpm) {
  using namespace constants;
  return 3.0 * chi3 * omega_n / (4.0 * epsilon0 * c * c * n_p * n_n * a_xpm);
}

double nonlinear_mismatch(double gamma_p, const std::array<double, 3>& gamma_xpm, double pump_power) {
  if (pump_power < 0.0) throw InputError("nonlinear mismatch: pump power must be >= 0");
  return (gamma_p - 2.0 * (gamma_xpm[0] + gamma_xpm[1] + gamma_xpm[2])) * pump_power;
}

double gamma_squared_spontaneous(double chi3, double omega_p, double n_p, double n1, double n2, double n3,
                                 double a_eff) {
  using namespace constants;
  if (!(n_p > 0.0 && n1 > 0.0 && n2 > 0.0 && n3 > 0.0)) throw InputError("gamma squared: indices must be positive");
  if (!(a_eff > 0.0)) throw InputError("gamma squared: effective area must be positive");
  const double c2 = c * c;
  return 9.0 * chi3 * chi3 * omega_p * omega_p / (epsilon0 * epsilon0 * c2 * c2 * n_p * n1 * n2 * n3 * a_eff * a_eff);
}

double gamma_squared_seeded(double chi3, double omega_p_tilde, double n_p, double n1, double n2, double n_s,
                            double a_eff) {
  return gamma_squared_spontaneous(chi3, omega_p_tilde, n_p, n1, n2, n_s, a_eff);
}

}  // namespace topdc
