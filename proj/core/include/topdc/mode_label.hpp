#pragma once

#include <string>
#include <string_view>

namespace topdc {

enum class ModeFamily { HE, EH, TE, TM };

/// HE_{νm}, EH_{νm}, TE_{0m}, TM_{0m}.
struct ModeLabel {
  ModeFamily family = ModeFamily::HE;
  int azimuthal_order = 1;
  int radial_order = 1;

  ModeLabel() = default;
  ModeLabel(ModeFamily f, int nu, int m);

  /// Parses "HE11", "HE12", "TE01", "EH21" and the long form "HE_1_2".
  static ModeLabel parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

}  // namespace topdc
