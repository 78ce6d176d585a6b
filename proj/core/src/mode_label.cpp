#include "topdc/mode_label.hpp"

#include <cctype>
#include <charconv>

#include "topdc/errors.hpp"

namespace topdc {

ModeLabel::ModeLabel(ModeFamily f, int nu, int m) : family(f), azimuthal_order(nu), radial_order(m) {
  if (m < 1) throw InputError("mode label: radial order must be >= 1");
  if (nu < 0) throw InputError("mode label: azimuthal order must be >= 0");
  if ((f == ModeFamily::TE || f == ModeFamily::TM) && nu != 0) {
    throw InputError("mode label: TE/TM modes require azimuthal order 0");
  }
  if ((f == ModeFamily::HE || f == ModeFamily::EH) && nu == 0) {
    throw InputError("mode label: HE/EH modes require azimuthal order >= 1");
  }
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("mode label: cannot parse '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

ModeLabel ModeLabel::parse(std::string_view text) {
  if (text.size() < 4) throw InputError("mode label: cannot parse '" + std::string(text) + "'");
  std::string fam{text.substr(0, 2)};
  for (auto& ch : fam) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  ModeFamily f;
  if (fam == "HE") {
    f = ModeFamily::HE;
  } else if (fam == "EH") {
    f = ModeFamily::EH;
  } else if (fam == "TE") {
    f = ModeFamily::TE;
  } else if (fam == "TM") {
    f = ModeFamily::TM;
  } else {
    throw InputError("mode label: unknown family in '" + std::string(text) + "'");
  }
  std::string_view rest = text.substr(2);
  if (rest.front() == '_') {
    rest.remove_prefix(1);
    const auto sep = rest.find('_');
    if (sep == std::string_view::npos) throw InputError("mode label: cannot parse '" + std::string(text) + "'");
    return ModeLabel(f, parse_int(rest.substr(0, sep), text), parse_int(rest.substr(sep + 1), text));
  }
  // Compact form: one digit each.
  if (rest.size() != 2) throw InputError("mode label: use HE_<nu>_<m> for multi-digit orders: '" + std::string(text) + "'");
  return ModeLabel(f, parse_int(rest.substr(0, 1), text), parse_int(rest.substr(1, 1), text));
}

std::string ModeLabel::str() const {
  std::string fam;
  switch (family) {
    case ModeFamily::HE: fam = "HE"; break;
    case ModeFamily::EH: fam = "EH"; break;
    case ModeFamily::TE: fam = "TE"; break;
    case ModeFamily::TM: fam = "TM"; break;
  }
  if (azimuthal_order < 10 && radial_order < 10) {
    return fam + std::to_string(azimuthal_order) + std::to_string(radial_order);
  }
  return fam + "_" + std::to_string(azimuthal_order) + "_" + std::to_string(radial_order);
}

}  // namespace topdc
