#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "itemsynth/dataset.hpp"

namespace itemsynth {

// The nine per-dataset metrics. H1/H2 are Shannon entropies (bits) of the
// normalized item-support and pair-support distributions; GGD is the Gini
// coefficient of the item-support vector in percent; MSS the top item's
// frequency in percent. These four are reconstructed definitions.
struct CharacteristicsVector {
  double ds = 0;       // transaction count
  double as = 0;       // alphabet size
  double ats = 0;      // mean transaction size
  double mts = 0;      // max transaction size
  double density = 0;  // 100 * ATS / AS
  double ggd = 0;
  double h1 = 0;
  double h2 = 0;
  double mss = 0;
};

inline constexpr const char* kCharacteristicNames[9] = {
    "DS", "AS", "ATS", "MTS", "Density", "GGD", "H1", "H2", "MSS"};

CharacteristicsVector characteristics(const Dataset& d);

/// Element-wise arithmetic mean; ratios are averaged per dataset, never
/// recomputed from averaged numerators and denominators.
CharacteristicsVector aggregate(const std::vector<CharacteristicsVector>& vs);

using NamedCharacteristics = std::vector<std::pair<std::string, CharacteristicsVector>>;

// Fixed header: name,DS,AS,ATS,MTS,Density,GGD,H1,H2,MSS
std::string characteristics_csv(const NamedCharacteristics& rows);
nlohmann::json characteristics_to_json(const NamedCharacteristics& rows);
NamedCharacteristics characteristics_from_json(const nlohmann::json& j);

struct RadarData {
  std::string csv;  // min-max normalized axes, normalization constants included
  std::string svg;  // self-contained radar polygon overlay
};

/// Axes are min-max normalized over the input set; when min == max the
/// normalized value is defined as 1.0.
RadarData radar_data(const NamedCharacteristics& rows);

}  // namespace itemsynth
