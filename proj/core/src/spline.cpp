#include "topdc/spline.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include <stdexcept>

#include "topdc/errors.hpp"

namespace topdc {

struct CubicSpline::Impl {
  gsl_interp* interp = nullptr;
  ~Impl() {
    if (interp) gsl_interp_free(interp);
  }
};

namespace {
struct GslErrorsOff {
  GslErrorsOff() { gsl_set_error_handler_off(); }
};
const GslErrorsOff gsl_errors_off;
}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw InputError("spline: x and y sizes differ");
  if (x_.size() < 3) throw InputError("spline: need at least 3 points");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw MonotonicityError("spline: abscissae must be strictly increasing");
  }
  build();
}

void CubicSpline::build() {
  impl_ = std::make_unique<Impl>();
  impl_->interp = gsl_interp_alloc(gsl_interp_cspline, x_.size());
  if (!impl_->interp || gsl_interp_init(impl_->interp, x_.data(), y_.data(), x_.size()) != GSL_SUCCESS) {
    throw NumericalError("spline: GSL initialisation failed");
  }
}

CubicSpline::CubicSpline(const CubicSpline& other) : x_(other.x_), y_(other.y_) { build(); }

CubicSpline& CubicSpline::operator=(const CubicSpline& other) {
  if (this != &other) {
    x_ = other.x_;
    y_ = other.y_;
    build();
  }
  return *this;
}

CubicSpline::CubicSpline(CubicSpline&&) noexcept = default;
CubicSpline& CubicSpline::operator=(CubicSpline&&) noexcept = default;
CubicSpline::~CubicSpline() = default;

// A null accelerator makes evaluation reentrant.
double CubicSpline::operator()(double x) const {
  if (x < x_.front() || x > x_.back()) throw DomainEdge("spline: abscissa outside sampled domain");
  return gsl_interp_eval(impl_->interp, x_.data(), y_.data(), x, nullptr);
}

double CubicSpline::derivative(double x) const {
  if (x < x_.front() || x > x_.back()) throw DomainEdge("spline: abscissa outside sampled domain");
  return gsl_interp_eval_deriv(impl_->interp, x_.data(), y_.data(), x, nullptr);
}

double CubicSpline::second_derivative(double x) const {
  if (x < x_.front() || x > x_.back()) throw DomainEdge("spline: abscissa outside sampled domain");
  return gsl_interp_eval_deriv2(impl_->interp, x_.data(), y_.data(), x, nullptr);
}

}  // namespace topdc
