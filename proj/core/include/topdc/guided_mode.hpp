#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topdc/field_grid.hpp"
#include "topdc/mode_label.hpp"

namespace topdc {

enum class ModeSource { step_index, capillary, tabulated };

std::string to_string(ModeSource source);

/// Propagation record of one labelled mode: β(ω) on a closed frequency
/// domain plus an optional transverse field. Immutable and cheap to copy.
class GuidedMode {
 public:
  using BetaFunction = std::function<double(double omega)>;

  /// Closed-form β. The function must be valid on [omega_min, omega_max].
  GuidedMode(ModeLabel label, ModeSource source, BetaFunction beta, double omega_min, double omega_max,
             std::optional<FieldGrid> field = std::nullopt);

  /// Cubic spline through (ω, β) samples. ω and β strictly increasing, β > 0.
  static GuidedMode from_samples(ModeLabel label, ModeSource source, std::vector<double> omega,
                                 std::vector<double> beta, std::optional<FieldGrid> field = std::nullopt);

  const ModeLabel& label() const { return label_; }
  ModeSource source() const { return source_; }
  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  bool covers(double omega) const { return omega >= omega_min_ && omega <= omega_max_; }

  /// rad/m; DomainEdge outside the domain.
  double beta(double omega) const;
  double effective_index(double omega) const;
  /// Reciprocal central difference of β with relative step 1e-6.
  double group_velocity(double omega) const;

  const std::optional<FieldGrid>& field() const { return field_; }
  GuidedMode with_field(FieldGrid field) const;

 private:
  ModeLabel label_;
  ModeSource source_;
  std::shared_ptr<const BetaFunction> beta_;
  double omega_min_;
  double omega_max_;
  std::optional<FieldGrid> field_;
};

inline constexpr double group_velocity_relative_step = 1e-6;

double group_velocity_of(const GuidedMode& mode, double omega);

}  // namespace topdc
