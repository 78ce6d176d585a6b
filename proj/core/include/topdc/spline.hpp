#pragma once

#include <memory>
#include <span>
#include <vector>

namespace topdc {

/// Natural cubic spline through strictly increasing abscissae.
/// Immutable after construction; evaluation is thread-safe.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);
  CubicSpline(const CubicSpline& other);
  CubicSpline& operator=(const CubicSpline& other);
  CubicSpline(CubicSpline&&) noexcept;
  CubicSpline& operator=(CubicSpline&&) noexcept;
  ~CubicSpline();

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }

 private:
  struct Impl;
  void build();

  std::vector<double> x_;
  std::vector<double> y_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace topdc
