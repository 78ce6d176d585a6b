#include "topdc/dispersion_table.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "topdc/constants.hpp"
#include "topdc/errors.hpp"

namespace topdc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& source, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(source, line, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParseError(source, line, "not a number: '" + s + "'");
  return v;
}

}  // namespace

DispersionTable parse_dispersion(const std::string& text, const std::string& source_name) {
  DispersionTable t;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool in_first_block = true;
  bool block_started = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty()) {
      if (block_started) in_first_block = false;
      continue;
    }
    if (line.front() == '#') {
      const std::string body = trim(line.substr(1));
      if (in_first_block && !header_seen) {
        block_started = true;
        if (!t.provenance.empty()) t.provenance += '\n';
        t.provenance += body;
      }
      if (body.rfind("fiber:", 0) == 0) t.fiber_id = trim(body.substr(6));
      if (body.rfind("mode:", 0) == 0) t.label = ModeLabel::parse(trim(body.substr(5)));
      continue;
    }
    in_first_block = false;
    if (!header_seen) {
      std::string h;
      for (char ch : line) {
        if (ch != ' ' && ch != '\t') h += ch;
      }
      if (h != "wavelength_m,n_eff") throw ParseError(source_name, lineno, "expected header 'wavelength_m,n_eff'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(source_name, lineno, "expected two comma-separated columns");
    }
    const double lam = to_double(trim(line.substr(0, comma)), source_name, lineno);
    const double n = to_double(trim(line.substr(comma + 1)), source_name, lineno);
    if (!(lam > 0.0) || !std::isfinite(lam)) throw ParseError(source_name, lineno, "wavelength must be positive");
    if (!(n > 0.0) || !std::isfinite(n)) throw ParseError(source_name, lineno, "effective index must be positive");
    if (!t.wavelength.empty() && !(lam > t.wavelength.back())) {
      throw MonotonicityError(source_name + ":" + std::to_string(lineno) +
                              ": wavelengths must be strictly increasing");
    }
    t.wavelength.push_back(lam);
    t.n_eff.push_back(n);
  }
  if (!header_seen) throw ParseError(source_name, lineno, "missing header 'wavelength_m,n_eff'");
  if (t.size() < min_table_rows) {
    throw ParseError(source_name, lineno,
                     "dispersion table needs at least " + std::to_string(min_table_rows) + " rows");
  }
  return t;
}

DispersionTable ingest_dispersion(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open dispersion table '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dispersion(ss.str(), path.string());
}

void write_dispersion(const DispersionTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write dispersion table '" + path.string() + "'");
  std::istringstream prov(table.provenance);
  std::string line;
  while (std::getline(prov, line)) out << "# " << line << '\n';
  if (!table.fiber_id.empty()) out << "# fiber: " << table.fiber_id << '\n';
  if (table.label) out << "# mode: " << table.label->str() << '\n';
  out << "wavelength_m,n_eff\n" << std::setprecision(17);
  for (std::size_t i = 0; i < table.size(); ++i) out << table.wavelength[i] << ',' << table.n_eff[i] << '\n';
}

GuidedMode tabulated_mode(const DispersionTable& table, std::optional<ModeLabel> label) {
  const ModeLabel l = label ? *label : table.label.value_or(ModeLabel{});
  std::vector<double> omega, beta;
  omega.reserve(table.size());
  beta.reserve(table.size());
  // Wavelength ascending means ω descending.
  for (std::size_t k = table.size(); k-- > 0;) {
    const double w = constants::angular_frequency(table.wavelength[k]);
    omega.push_back(w);
    beta.push_back(table.n_eff[k] * w / constants::c);
  }
  return GuidedMode::from_samples(l, ModeSource::tabulated, std::move(omega), std::move(beta));
}

DispersionTable tabulate(const GuidedMode& mode, double lambda_min, double lambda_max, std::size_t rows) {
  if (rows < min_table_rows) throw InputError("tabulate: too few rows");
  DispersionTable t;
  t.label = mode.label();
  t.provenance = "sampled from a " + to_string(mode.source()) + " mode";
  const double w_lo = constants::angular_frequency(lambda_max);
  const double w_hi = constants::angular_frequency(lambda_min);
  for (std::size_t i = rows; i-- > 0;) {
    const double w = w_lo + (w_hi - w_lo) * static_cast<double>(i) / static_cast<double>(rows - 1);
    t.wavelength.push_back(constants::wavelength_of(w));
    t.n_eff.push_back(mode.effective_index(w));
  }
  return t;
}

}  // namespace topdc
