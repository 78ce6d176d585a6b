#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace topdc {

/// Transverse field sampled on a cell-centred rectangular grid, normalised so
/// that sum |F|^2 dx dy = 1. Sample (i, j) sits at
/// x = (i - (nx-1)/2) dx, y = (j - (ny-1)/2) dy and is stored row-major
/// (index j*nx + i).
class FieldGrid {
 public:
  using Sampler = std::function<std::complex<double>(double x, double y)>;

  FieldGrid(std::size_t nx, std::size_t ny, double dx, double dy, std::vector<std::complex<double>> values);

  static FieldGrid sample(std::size_t nx, std::size_t ny, double dx, double dy, const Sampler& f);
  /// exp(-r^2/w^2), i.e. 1/e^2 intensity radius w.
  static FieldGrid gaussian(std::size_t n, double dx, double w, double x0 = 0.0, double y0 = 0.0);
  /// Constant inside a square of side `side` (cells whose centre lies inside).
  static FieldGrid flat_top(std::size_t n, double dx, double side);

  /// Text format: first line `nx ny dx dy [real|complex]`, then nx*ny values
  /// row-major (pairs `re im` when complex). `#` starts a comment.
  static FieldGrid load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Bilinear resampling onto another grid (zero outside), renormalised.
  FieldGrid resampled(std::size_t nx, std::size_t ny, double dx, double dy) const;

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double x(std::size_t i) const;
  double y(std::size_t j) const;
  const std::complex<double>& at(std::size_t i, std::size_t j) const { return values_[j * nx_ + i]; }
  std::span<const std::complex<double>> values() const { return values_; }

  /// sum |F|^2 dx dy
  double norm() const;
  bool same_geometry(const FieldGrid& other) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double dx_;
  double dy_;
  std::vector<std::complex<double>> values_;
};

}  // namespace topdc
