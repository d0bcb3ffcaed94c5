#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "itemsynth/dataset.hpp"
#include "itemsynth/rng.hpp"

namespace itemsynth {

struct IimComponent {
  Itemset itemset;  // nonempty
  double p = 0.0;   // Bernoulli inclusion probability, in (0, 1]
};

struct IimLearnConfig {
  int rounds = 10;
  int max_candidates_per_round = 100;
  double min_p = 0.01;
  double lambda = 2.0;  // uncovered-item penalty in the cover cost
};

struct IimModel {
  std::vector<IimComponent> components;  // canonical order, no duplicates
  Itemset alphabet;
  std::size_t source_size = 0;
  IimLearnConfig config;  // provenance
};

struct CoverResult {
  std::vector<std::size_t> picked;  // component indices, in pick order
  Itemset uncovered;                // items of t no component fit
};

/// Repeatedly picks the component that fits inside the still-uncovered items,
/// preferring larger size, then higher p, then the lexicographically smaller
/// itemset. Picked components are pairwise disjoint.
CoverResult greedy_cover(const Itemset& t, const std::vector<IimComponent>& components);

struct IimLearnTrace {
  std::vector<double> round_costs;  // total cover cost after each round (index 0 = initial)
};

/// Greedy-cover structural EM: start from singletons with empirical
/// frequencies, repeatedly propose unions of co-occurring cover components,
/// accept a candidate only if it strictly lowers the total cover cost
/// Σ_T (|cover(T)| + λ·|uncovered(T)|), then re-estimate every p as the
/// fraction of covers using the component (floored at min_p). Components
/// whose usage falls below min_p are dropped at the end, except singletons
/// still needed so every alphabet item stays generatable.
IimModel learn_iim(const Dataset& d, const IimLearnConfig& cfg = {},
                   IimLearnTrace* trace = nullptr);

struct IimGenOptions {
  bool retry_empty = true;  // redraw when no trial succeeds
  int max_retries = 1000;
};

/// One Bernoulli(p) trial per component; the transaction is the union of the
/// successful components' items.
Itemset generate_transaction_iim(const IimModel& m, Rng& rng, const IimGenOptions& opts = {});

Dataset generate_dataset_iim(const IimModel& m, std::size_t n, std::uint64_t seed,
                             const IimGenOptions& opts = {}, int threads = 0);

nlohmann::json iim_to_json(const IimModel& m);
IimModel iim_from_json(const nlohmann::json& j);

}  // namespace itemsynth
