#include "topdc/field_grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "topdc/errors.hpp"

namespace topdc {

namespace {

void normalize(std::vector<std::complex<double>>& v, double cell) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  s *= cell;
  if (!(s > 0.0) || !std::isfinite(s)) throw InputError("field grid: field is identically zero or not finite");
  const double f = 1.0 / std::sqrt(s);
  for (auto& z : v) z *= f;
}

}  // namespace

FieldGrid::FieldGrid(std::size_t nx, std::size_t ny, double dx, double dy, std::vector<std::complex<double>> values)
    : nx_(nx), ny_(ny), dx_(dx), dy_(dy), values_(std::move(values)) {
  if (nx_ == 0 || ny_ == 0) throw InputError("field grid: empty grid");
  if (!(dx_ > 0.0) || !(dy_ > 0.0)) throw InputError("field grid: spacing must be positive");
  if (values_.size() != nx_ * ny_) throw InputError("field grid: value count does not match nx*ny");
  normalize(values_, dx_ * dy_);
}

double FieldGrid::x(std::size_t i) const { return (static_cast<double>(i) - 0.5 * static_cast<double>(nx_ - 1)) * dx_; }
double FieldGrid::y(std::size_t j) const { return (static_cast<double>(j) - 0.5 * static_cast<double>(ny_ - 1)) * dy_; }

FieldGrid FieldGrid::sample(std::size_t nx, std::size_t ny, double dx, double dy, const Sampler& f) {
  std::vector<std::complex<double>> v(nx * ny);
  const double cx = 0.5 * static_cast<double>(nx - 1);
  const double cy = 0.5 * static_cast<double>(ny - 1);
  for (std::size_t j = 0; j < ny; ++j) {
    const double yy = (static_cast<double>(j) - cy) * dy;
    for (std::size_t i = 0; i < nx; ++i) v[j * nx + i] = f((static_cast<double>(i) - cx) * dx, yy);
  }
  return FieldGrid(nx, ny, dx, dy, std::move(v));
}

FieldGrid FieldGrid::gaussian(std::size_t n, double dx, double w, double x0, double y0) {
  return sample(n, n, dx, dx, [=](double x, double y) {
    const double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
    return std::complex<double>(std::exp(-r2 / (w * w)), 0.0);
  });
}

FieldGrid FieldGrid::flat_top(std::size_t n, double dx, double side) {
  return sample(n, n, dx, dx, [=](double x, double y) {
    return std::complex<double>(std::abs(x) < 0.5 * side && std::abs(y) < 0.5 * side ? 1.0 : 0.0, 0.0);
  });
}

FieldGrid FieldGrid::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open field grid file '" + path.string() + "'");
  std::ostringstream clean;
  std::string line;
  std::size_t lineno = 0;
  std::size_t header_line = 0;
  std::string header;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    if (header.empty()) {
      header = line;
      header_line = lineno;
      continue;
    }
    for (auto& ch : line) {
      if (ch == ',') ch = ' ';
    }
    clean << line << '\n';
  }
  if (header.empty()) throw ParseError(path.string(), lineno, "missing field grid header");
  std::istringstream hs(header);
  std::size_t nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  std::string kind = "real";
  if (!(hs >> nx >> ny >> dx >> dy)) throw ParseError(path.string(), header_line, "header must be 'nx ny dx dy'");
  hs >> kind;
  if (kind != "real" && kind != "complex") throw ParseError(path.string(), header_line, "unknown value kind '" + kind + "'");
  const bool cplx = kind == "complex";
  std::istringstream vs(clean.str());
  std::vector<std::complex<double>> values;
  values.reserve(nx * ny);
  double re = 0.0, im = 0.0;
  while (vs >> re) {
    if (cplx && !(vs >> im)) throw ParseError(path.string(), lineno, "odd number of values in complex grid");
    values.emplace_back(re, cplx ? im : 0.0);
  }
  if (!vs.eof()) throw ParseError(path.string(), lineno, "non-numeric value in field grid");
  if (values.size() != nx * ny) {
    throw ParseError(path.string(), lineno,
                     "expected " + std::to_string(nx * ny) + " values, found " + std::to_string(values.size()));
  }
  return FieldGrid(nx, ny, dx, dy, std::move(values));
}

void FieldGrid::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write field grid file '" + path.string() + "'");
  bool cplx = false;
  for (const auto& z : values_) cplx = cplx || z.imag() != 0.0;
  out << std::setprecision(17) << nx_ << ' ' << ny_ << ' ' << dx_ << ' ' << dy_ << (cplx ? " complex" : " real") << '\n';
  for (std::size_t j = 0; j < ny_; ++j) {
    for (std::size_t i = 0; i < nx_; ++i) {
      const auto& z = values_[j * nx_ + i];
      if (i) out << ' ';
      out << z.real();
      if (cplx) out << ' ' << z.imag();
    }
    out << '\n';
  }
}

FieldGrid FieldGrid::resampled(std::size_t nx, std::size_t ny, double dx, double dy) const {
  const double cx = 0.5 * static_cast<double>(nx_ - 1);
  const double cy = 0.5 * static_cast<double>(ny_ - 1);
  return sample(nx, ny, dx, dy, [&](double xx, double yy) {
    const double fi = xx / dx_ + cx;
    const double fj = yy / dy_ + cy;
    if (fi < 0.0 || fj < 0.0 || fi > static_cast<double>(nx_ - 1) || fj > static_cast<double>(ny_ - 1)) {
      return std::complex<double>(0.0, 0.0);
    }
    const auto i0 = std::min(static_cast<std::size_t>(fi), nx_ > 1 ? nx_ - 2 : 0);
    const auto j0 = std::min(static_cast<std::size_t>(fj), ny_ > 1 ? ny_ - 2 : 0);
    const std::size_t i1 = std::min(i0 + 1, nx_ - 1);
    const std::size_t j1 = std::min(j0 + 1, ny_ - 1);
    const double tx = fi - static_cast<double>(i0);
    const double ty = fj - static_cast<double>(j0);
    return (1 - tx) * (1 - ty) * at(i0, j0) + tx * (1 - ty) * at(i1, j0) + (1 - tx) * ty * at(i0, j1) +
           tx * ty * at(i1, j1);
  });
}

double FieldGrid::norm() const {
  double s = 0.0;
  for (const auto& z : values_) s += std::norm(z);
  return s * dx_ * dy_;
}

bool FieldGrid::same_geometry(const FieldGrid& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_ && dx_ == other.dx_ && dy_ == other.dy_;
}

}  // namespace topdc
