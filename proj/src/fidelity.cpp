#include "itemsynth/fidelity.hpp"

#include <algorithm>

#include "itemsynth/errors.hpp"

namespace itemsynth {

double itemset_precision(const Itemset& x, const Itemset& y) {
  if (y.empty()) return 0.0;
  return static_cast<double>(x.intersection_size(y)) / static_cast<double>(y.size());
}

double itemset_recall(const Itemset& x, const Itemset& y) {
  if (x.empty()) return 0.0;
  return static_cast<double>(x.intersection_size(y)) / static_cast<double>(x.size());
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

namespace {

// Mean over `rows` of the best per-itemset score against `candidates`.
template <typename Score>
double best_match_mean(const std::vector<FrequentItemset>& rows,
                       const std::vector<FrequentItemset>& candidates, Score score) {
  if (rows.empty() || candidates.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& row : rows) {
    double best = 0.0;
    for (const auto& cand : candidates) best = std::max(best, score(row.items, cand.items));
    sum += best;
  }
  return sum / static_cast<double>(rows.size());
}

}  // namespace

double set_precision(const FrequentItemsetSet& syn, const FrequentItemsetSet& ori) {
  return best_match_mean(syn.itemsets, ori.itemsets, [](const Itemset& y, const Itemset& x) {
    return itemset_precision(x, y);
  });
}

double set_recall(const FrequentItemsetSet& syn, const FrequentItemsetSet& ori) {
  return best_match_mean(ori.itemsets, syn.itemsets, [](const Itemset& x, const Itemset& y) {
    return itemset_recall(x, y);
  });
}

std::vector<double> default_support_grid() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

FidelityReport pattern_fidelity(const Dataset& ori, const Dataset& syn,
                                const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::usage, "support grid must be nonempty");

  FidelityReport report;
  report.kind = FidelityKind::pattern;

  double p_sum = 0.0;
  double r_sum = 0.0;
  std::size_t counted = 0;
  for (double s : grid) {
    const FrequentItemsetSet fi_ori = mine_frequent(ori, s);
    const FrequentItemsetSet fi_syn = mine_frequent(syn, s);

    SupportLevelScore level;
    level.minsup = s;
    level.syn_empty = fi_syn.itemsets.empty();
    level.ori_empty = fi_ori.itemsets.empty();
    level.both_empty = level.syn_empty && level.ori_empty;
    if (!level.both_empty) {
      level.precision = set_precision(fi_syn, fi_ori);
      level.recall = set_recall(fi_syn, fi_ori);
      p_sum += level.precision;
      r_sum += level.recall;
      ++counted;
    }
    level.f1 = f1_score(level.precision, level.recall);
    report.per_support_level.push_back(level);
  }

  if (counted > 0) {
    report.precision = p_sum / static_cast<double>(counted);
    report.recall = r_sum / static_cast<double>(counted);
  }
  report.f1 = f1_score(report.precision, report.recall);
  return report;
}

FidelityReport privacy_score(const Dataset& ori, const Dataset& syn) {
  if (ori.size() == 0 || syn.size() == 0) {
    throw Error(ErrorCode::usage, "privacy score needs nonempty datasets");
  }

  FidelityReport report;
  report.kind = FidelityKind::privacy;

  double p_sum = 0.0;
  std::size_t p_count = 0;
  for (const auto& y : syn.transactions()) {
    if (y.empty()) continue;  // convention: empty synthetic transactions skipped
    double best = 0.0;
    for (const auto& x : ori.transactions()) best = std::max(best, itemset_precision(x, y));
    p_sum += best;
    ++p_count;
  }
  report.precision = p_count > 0 ? p_sum / static_cast<double>(p_count) : 0.0;

  double r_sum = 0.0;
  for (const auto& x : ori.transactions()) {
    double best = 0.0;
    for (const auto& y : syn.transactions()) best = std::max(best, itemset_recall(x, y));
    r_sum += best;
  }
  report.recall = r_sum / static_cast<double>(ori.size());
  report.f1 = f1_score(report.precision, report.recall);
  return report;
}

nlohmann::json fidelity_to_json(const FidelityReport& r) {
  nlohmann::json j{{"kind", r.kind == FidelityKind::pattern ? "pattern" : "privacy"},
                   {"precision", r.precision},
                   {"recall", r.recall},
                   {"f1", r.f1}};
  if (r.kind == FidelityKind::pattern) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& level : r.per_support_level) {
      levels.push_back({{"minsup", level.minsup},
                        {"precision", level.precision},
                        {"recall", level.recall},
                        {"f1", level.f1},
                        {"syn_empty", level.syn_empty},
                        {"ori_empty", level.ori_empty},
                        {"both_empty", level.both_empty}});
    }
    j["per_support_level"] = levels;
  }
  return j;
}

}  // namespace itemsynth
