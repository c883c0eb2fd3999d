#pragma once

#include <string_view>
#include <vector>

#include "udn/cli/sweep.hpp"

namespace udn::cli {

// Coverage/ASE versus BS density with building blockage (h=20, building
// height 10, building densities 1e-4 and 1e-1, both policies).
SweepSpec fig2_preset();
// Single-slope LOS (alpha 3) and NLOS (alpha 4) cases at h = 0 and 20.
SweepSpec fig3_preset();
// NLOS case at h = 10, 15, 20: ASE versus BS density.
SweepSpec fig4_preset();

std::vector<std::string_view> preset_names();
SweepSpec preset(std::string_view name);  // UsageError on unknown names

/// Monte Carlo trials per point used by presets unless overridden.
inline constexpr std::size_t kPresetTrials = 10000;

}  // namespace udn::cli
