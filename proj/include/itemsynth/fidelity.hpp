#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "itemsynth/dataset.hpp"
#include "itemsynth/fim.hpp"

namespace itemsynth {

// p_X(Y) = |X ∩ Y| / |Y|, r_X(Y) = |X ∩ Y| / |X|; an empty denominator
// itemset yields 0 by convention.
double itemset_precision(const Itemset& x, const Itemset& y);
double itemset_recall(const Itemset& x, const Itemset& y);

// Matched set scores: mean over one side of the best per-itemset score
// against the other side. Either side empty yields 0.
double set_precision(const FrequentItemsetSet& syn, const FrequentItemsetSet& ori);
double set_recall(const FrequentItemsetSet& syn, const FrequentItemsetSet& ori);

double f1_score(double precision, double recall);

enum class FidelityKind { pattern, privacy };

struct SupportLevelScore {
  double minsup = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool syn_empty = false;
  bool ori_empty = false;
  // Both FI sets empty: recorded as (0,0) and flagged, excluded from the
  // global means so self-evaluation stays exactly 1.
  bool both_empty = false;
};

struct FidelityReport {
  FidelityKind kind = FidelityKind::pattern;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::vector<SupportLevelScore> per_support_level;  // pattern reports only
};

/// S = 10%..90% step 10, the default evaluation grid.
std::vector<double> default_support_grid();

/// Mines both datasets at every grid level, scores each level, then averages
/// precision and recall over the levels before forming a single F1.
FidelityReport pattern_fidelity(const Dataset& ori, const Dataset& syn,
                                const std::vector<double>& grid);

/// Same matching applied to raw transactions. High F1 means low privacy.
/// Empty synthetic transactions are skipped in the precision mean.
FidelityReport privacy_score(const Dataset& ori, const Dataset& syn);

nlohmann::json fidelity_to_json(const FidelityReport& r);

}  // namespace itemsynth
