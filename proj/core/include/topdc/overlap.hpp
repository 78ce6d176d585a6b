#pragma once

#include <array>

#include "topdc/field_grid.hpp"

namespace topdc {

enum class AreaSource { computed, supplied };

struct OverlapSet {
  double a_eff_4mode = 0.0;               // m²
  double a_eff_spm = 0.0;                 // m²
  std::array<double, 3> a_eff_xpm{};      // m², pump with each triplet mode
  AreaSource source = AreaSource::computed;
};

/// 1 / ∫ F_p F_1* F_2* F_3* dx dy. Throws NonPositiveOverlap when the real
/// part of the integral is <= 0 unless `absolute` is set, in which case the
/// modulus is used.
double effective_area_4mode(const FieldGrid& fp, const FieldGrid& f1, const FieldGrid& f2, const FieldGrid& f3,
                            bool absolute = false);
/// 1 / ∫ |F_p|^4 dx dy
double effective_area_spm(const FieldGrid& fp);
/// 1 / ∫ |F_p|^2 |F_n|^2 dx dy; DisjointModes when the supports do not meet.
double effective_area_xpm(const FieldGrid& fp, const FieldGrid& fn);

OverlapSet compute_overlaps(const FieldGrid& fp, const FieldGrid& f1, const FieldGrid& f2, const FieldGrid& f3,
                            bool absolute = false);
/// Every slot set to the one externally supplied area.
OverlapSet supplied_overlaps(double a_eff);

/// Self-phase coefficient 3 χ ω_p / (4 ε0 c² n_p² A_spm), 1/(W m).
double gamma_spm(double chi3, double omega_p, double n_p, double a_spm);
/// Cross-phase coefficient 3 χ ω_n / (4 ε0 c² n_p n_n A_xpm), 1/(W m).
double gamma_xpm(double chi3, double omega_n, double n_p, double n_n, double a_xpm);

/// [γ_p − 2(γ_1 + γ_2 + γ_3)] P_p, rad/m.
double nonlinear_mismatch(double gamma_p, const std::array<double, 3>& gamma_xpm, double pump_power);

/// 9 χ² ω_p² / (ε0² c⁴ n_p n_1 n_2 n_3 A²)
double gamma_squared_spontaneous(double chi3, double omega_p, double n_p, double n1, double n2, double n3,
                                 double a_eff);
/// Same form with ω̃_p = ω_p − ω_s and the seed index in the third slot.
double gamma_squared_seeded(double chi3, double omega_p_tilde, double n_p, double n1, double n2, double n_s,
                            double a_eff);

}  // namespace topdc
