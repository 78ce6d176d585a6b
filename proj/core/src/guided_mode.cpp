#include "topdc/guided_mode.hpp"

#include <cmath>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"
#include "topdc/spline.hpp"

namespace topdc {

std::string to_string(ModeSource source) {
  switch (source) {
    case ModeSource::step_index: return "step_index";
    case ModeSource::capillary: return "capillary";
    case ModeSource::tabulated: return "tabulated";
  }
  return "unknown";
}

GuidedMode::GuidedMode(ModeLabel label, ModeSource source, BetaFunction beta, double omega_min, double omega_max,
                       std::optional<FieldGrid> field)
    : label_(label),
      source_(source),
      beta_(std::make_shared<const BetaFunction>(std::move(beta))),
      omega_min_(omega_min),
      omega_max_(omega_max),
      field_(std::move(field)) {
  if (!(omega_min_ > 0.0) || !(omega_max_ > omega_min_)) throw InputError("guided mode: invalid frequency domain");
}

GuidedMode GuidedMode::from_samples(ModeLabel label, ModeSource source, std::vector<double> omega,
                                    std::vector<double> beta, std::optional<FieldGrid> field) {
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (!(beta[i] > 0.0)) throw NumericalError("guided mode " + label.str() + ": non-positive beta sample");
    if (i > 0 && !(beta[i] > beta[i - 1])) {
      throw MonotonicityError("guided mode " + label.str() + ": beta not strictly increasing in omega");
    }
  }
  auto spline = std::make_shared<const CubicSpline>(std::move(omega), std::move(beta));
  const double lo = spline->x_min();
  const double hi = spline->x_max();
  return GuidedMode(label, source, [spline](double w) { return (*spline)(w); }, lo, hi, std::move(field));
}

double GuidedMode::beta(double omega) const {
  if (!covers(omega)) {
    throw DomainEdge("mode " + label_.str() + ": omega " + std::to_string(omega) + " rad/s outside sampled domain");
  }
  return (*beta_)(omega);
}

double GuidedMode::effective_index(double omega) const { return beta(omega) * constants::c / omega; }

double GuidedMode::group_velocity(double omega) const {
  const double h = group_velocity_relative_step * omega;
  if (!(omega - h >= omega_min_ && omega + h <= omega_max_)) {
    throw DomainEdge("mode " + label_.str() + ": group velocity requested at the edge of the sampled domain");
  }
  return 2.0 * h / ((*beta_)(omega + h) - (*beta_)(omega - h));
}

GuidedMode GuidedMode::with_field(FieldGrid field) const {
  GuidedMode copy = *this;
  copy.field_ = std::move(field);
  return copy;
}

double group_velocity_of(const GuidedMode& mode, double omega) { return mode.group_velocity(omega); }

}  // namespace topdc
