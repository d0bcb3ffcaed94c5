#pragma once

#include <string>
#include <utility>
#include <vector>

namespace itemsynth {

/// Radar chart: one closed polygon per named series, values already
/// normalized to [0, 1] per axis.
std::string radar_svg(const std::vector<std::string>& axis_names,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series);

/// Vertical bars for values in [0, 1] (F1-style scores).
std::string bar_svg(const std::string& title,
                    const std::vector<std::pair<std::string, double>>& bars);

}  // namespace itemsynth
