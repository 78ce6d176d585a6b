#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "topdc/guided_mode.hpp"
#include "topdc/mode_label.hpp"

namespace topdc {

/// Tabulated effective index n_eff(λ) of one mode.
struct DispersionTable {
  std::vector<double> wavelength;  // m, strictly increasing
  std::vector<double> n_eff;
  std::optional<ModeLabel> label;
  std::string fiber_id;
  std::string provenance;  // first comment block, lines joined with '\n'

  std::size_t size() const { return wavelength.size(); }
};

inline constexpr std::size_t min_table_rows = 8;

/// CSV with header `wavelength_m,n_eff`; `#` lines are comments. Comment
/// lines `# fiber: <id>` and `# mode: <label>` fill the metadata.
DispersionTable parse_dispersion(const std::string& text, const std::string& source_name = "<string>");
DispersionTable ingest_dispersion(const std::filesystem::path& path);
void write_dispersion(const DispersionTable& table, const std::filesystem::path& path);

/// Spline in (ω, β). The label argument overrides the table's own.
GuidedMode tabulated_mode(const DispersionTable& table, std::optional<ModeLabel> label = std::nullopt);

/// Samples an existing mode onto a table (used to cross-check the tabulated path).
DispersionTable tabulate(const GuidedMode& mode, double lambda_min, double lambda_max, std::size_t rows);

}  // namespace topdc
