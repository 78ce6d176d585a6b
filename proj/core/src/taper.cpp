#include "topdc/taper.hpp"

#include "topdc/spectral_grid.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "topdc/constants.hpp"
#include "topdc/errors.hpp"
#include "topdc/step_index.hpp"

namespace topdc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

TaperProfile TaperProfile::parse(const std::string& text, const std::string& source_name) {
  TaperProfile p;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "z_m,radius_m") throw ParseError(source_name, lineno, "expected header 'z_m,radius_m'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(source_name, lineno, "expected two comma-separated columns");
    try {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = trim(line.substr(0, comma));
      const std::string b = trim(line.substr(comma + 1));
      const double z = std::stod(a, &u1);
      const double r = std::stod(b, &u2);
      if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing");
      p.z.push_back(z);
      p.radius.push_back(r);
    } catch (const std::exception&) {
      throw ParseError(source_name, lineno, "not a number");
    }
  }
  if (!header) throw ParseError(source_name, lineno, "missing header 'z_m,radius_m'");
  p.validate();
  return p;
}

TaperProfile TaperProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open taper profile '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void TaperProfile::validate() const {
  if (z.size() != radius.size()) throw InputError("taper profile: z and radius lengths differ");
  if (z.size() < 3) throw ProfileTooShort("taper profile: need at least 3 samples");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(radius[i] > 0.0)) throw InputError("taper profile: radii must be positive");
    if (i > 0 && !(z[i] > z[i - 1])) throw MonotonicityError("taper profile: z must be strictly increasing");
  }
}

double TaperProfile::waist_radius() const {
  double r = std::numeric_limits<double>::infinity();
  for (double v : radius) r = std::min(r, v);
  return r;
}

double adiabatic_limit(double local_radius, double beta_i, double beta_neighbor) {
  if (!(local_radius > 0.0)) throw InputError("adiabatic limit: radius must be positive");
  return local_radius * std::abs(beta_i - beta_neighbor) / (2.0 * constants::pi);
}

std::vector<double> local_angle(const TaperProfile& profile) {
  profile.validate();
  const auto& z = profile.z;
  const auto& r = profile.radius;
  const std::size_t n = z.size();
  std::vector<double> out(n);
  out[0] = std::abs((r[1] - r[0]) / (z[1] - z[0]));
  out[n - 1] = std::abs((r[n - 1] - r[n - 2]) / (z[n - 1] - z[n - 2]));
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = std::abs((r[i + 1] - r[i - 1]) / (z[i + 1] - z[i - 1]));
  return out;
}

std::string ModePair::name() const {
  auto tag = [](const TaperModeSpec& m) { return m.label.str() + (m.guidance == Guidance::cladding ? "(clad)" : ""); };
  return tag(a) + "-" + tag(b) + "@" + std::to_string(static_cast<long long>(std::llround(wavelength * 1e9))) + "nm";
}

std::vector<ModePair> default_mode_pairs(double pump_wavelength) {
  const ModeLabel he11(ModeFamily::HE, 1, 1), he12(ModeFamily::HE, 1, 2), he13(ModeFamily::HE, 1, 3);
  return {
      {{he11, Guidance::core}, {he12, Guidance::core}, pump_wavelength},
      {{he11, Guidance::core}, {he12, Guidance::cladding}, 3.0 * pump_wavelength},
      {{he12, Guidance::core}, {he13, Guidance::cladding}, pump_wavelength},
  };
}

double taper_mode_beta(const TaperFiber& fiber, const TaperModeSpec& mode, double local_radius, double wavelength) {
  StepIndexFiber f;
  if (mode.guidance == Guidance::core && local_radius >= fiber.core_threshold) {
    f = {fiber.core_radius * local_radius / fiber.outer_radius, fiber.n_core(wavelength), fiber.n_clad(wavelength)};
  } else {
    f = {local_radius, fiber.n_clad(wavelength), fiber.n_env(wavelength)};
  }
  return solve_step_index_full(f, wavelength, mode.label).n_eff * 2.0 * constants::pi / wavelength;
}

std::vector<std::optional<double>> limit_curve(const TaperFiber& fiber, const ModePair& pair,
                                               const std::vector<double>& radii) {
  std::vector<std::optional<double>> out;
  out.reserve(radii.size());
  for (double r : radii) {
    try {
      const double ba = taper_mode_beta(fiber, pair.a, r, pair.wavelength);
      const double bb = taper_mode_beta(fiber, pair.b, r, pair.wavelength);
      out.emplace_back(adiabatic_limit(r, ba, bb));
    } catch (const ModeCutOff&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

AdiabaticityReport check_profile(const TaperProfile& profile, const TaperFiber& fiber,
                                 const std::vector<ModePair>& pairs) {
  if (profile.z.size() < 3) throw ProfileTooShort("taper profile: need at least 3 samples");
  AdiabaticityReport rep;
  rep.z = profile.z;
  rep.radius = profile.radius;
  rep.angle = local_angle(profile);
  for (const auto& p : pairs) {
    PairCurve c{p.name(), limit_curve(fiber, p, profile.radius)};
    for (std::size_t i = 0; i < c.limit.size();) {
      if (c.limit[i]) {
        ++i;
        continue;
      }
      std::size_t k = i;
      while (k + 1 < c.limit.size() && !c.limit[k + 1]) ++k;
      rep.notes.push_back(c.name + ": cut off for z in [" + format_double(profile.z[i]) + ", " +
                          format_double(profile.z[k]) + "] m (radius " + format_double(profile.radius[i]) + " to " +
                          format_double(profile.radius[k]) + " m), excluded");
      i = k + 1;
    }
    rep.pairs.push_back(std::move(c));
  }
  rep.pass = true;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.z.size(); ++i) {
    double lim = std::numeric_limits<double>::infinity();
    for (const auto& c : rep.pairs) {
      if (c.limit[i]) lim = std::min(lim, *c.limit[i]);
    }
    if (!std::isfinite(lim)) continue;
    if (!(rep.angle[i] < lim)) rep.pass = false;
    if (rep.angle[i] > 0.0) rep.worst_margin = std::min(rep.worst_margin, lim / rep.angle[i]);
  }
  return rep;
}

std::string AdiabaticityReport::to_json(const std::string& config_hash) const {
  nlohmann::ordered_json j;
  if (!config_hash.empty()) j["config_sha256"] = config_hash;
  j["pass"] = pass;
  if (std::isfinite(worst_margin)) {
    j["worst_margin"] = worst_margin;
  } else {
    j["worst_margin"] = nullptr;
  }
  j["z_m"] = z;
  j["radius_m"] = radius;
  j["local_angle_rad"] = angle;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : pairs) {
    nlohmann::ordered_json pc;
    pc["pair"] = c.name;
    auto lim = nlohmann::ordered_json::array();
    for (const auto& v : c.limit) {
      if (v) {
        lim.push_back(*v);
      } else {
        lim.push_back(nullptr);
      }
    }
    pc["limit_rad"] = lim;
    arr.push_back(pc);
  }
  j["pairs"] = arr;
  j["notes"] = notes;
  return j.dump(1);
}

double beat_period(double beta_a, double beta_b) {
  const double d = std::abs(beta_a - beta_b);
  if (!(d > 0.0)) throw DegenerateModes("beat period: modes are degenerate");
  return 2.0 * constants::pi / d;
}

double beat_period(const GuidedMode& a, const GuidedMode& b, double omega) {
  return beat_period(a.beta(omega), b.beta(omega));
}

double launch_overlap(const FieldGrid& in, const FieldGrid& out) {
  if (!in.same_geometry(out)) throw GridMismatch("launch overlap: field grids do not share geometry");
  const auto a = in.values();
  const auto b = out.values();
  std::complex<double> ip = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ip += std::conj(a[k]) * b[k];
    na += std::norm(a[k]);
    nb += std::norm(b[k]);
  }
  return std::min(1.0, std::norm(ip) / (na * nb));
}

double launch_overlap(const GuidedMode& in, const GuidedMode& out) {
  if (!in.field() || !out.field()) throw InputError("launch overlap: both modes need field grids");
  return launch_overlap(*in.field(), *out.field());
}

}  // namespace topdc
