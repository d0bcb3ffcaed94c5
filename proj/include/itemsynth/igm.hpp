#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "json.hpp"

#include "itemsynth/dataset.hpp"
#include "itemsynth/fim.hpp"
#include "itemsynth/rng.hpp"

namespace itemsynth {

// Universe the noise part draws from: the union of significant itemsets
// (matches the small generated alphabets seen in practice) or the full
// original alphabet.
enum class NoiseUniverse { effective, full };

struct IgmComponent {
  Itemset itemset;
  double theta = 0.0;   // support / |D| of the learning dataset
  double weight = 0.0;  // selection weight within its size class (= support)
};

struct IgmModel {
  std::vector<IgmComponent> components;  // canonical order
  Itemset effective_alphabet;            // union of component itemsets
  Itemset alphabet;                      // full alphabet of the learning dataset
  std::map<std::size_t, double> size_weights;  // size -> probability, sums to 1
  std::size_t source_size = 0;
  double minsup = 0.0;  // provenance
  NoiseUniverse noise_universe = NoiseUniverse::effective;
};

/// Keeps exactly the itemsets with support/|D| > 2^-|X| (strict) and assigns
/// theta = support/|D|. The comparison is done in integer arithmetic
/// (support << |X| > |D|), so it is exact. Throws when nothing survives.
std::vector<IgmComponent> filter_significant(const FrequentItemsetSet& fi,
                                             std::size_t dataset_size);

IgmModel learn_igm(const Dataset& d, double minsup,
                   NoiseUniverse noise_universe = NoiseUniverse::effective);

/// Pattern part: x itself with probability theta, otherwise a uniformly
/// random proper subset of x (the empty set included).
Itemset sample_pattern(const Itemset& x, double theta, Rng& rng);

/// Noise part: a uniformly random subset of universe \ x, drawn as one fair
/// coin per item (equivalent to the uniform law over all 2^|complement|
/// subsets).
Itemset sample_noise(const Itemset& x, const Itemset& universe, Rng& rng);

struct IgmDrawInfo {
  std::size_t component_index = 0;  // index into model.components
  bool pattern_full = false;        // pattern part came out as the whole itemset
};

Itemset generate_transaction_igm(const IgmModel& m, Rng& rng, IgmDrawInfo* info = nullptr);

struct IgmGenOptions {
  bool retry_empty = false;  // keep empty transactions unless asked to redraw
  int max_retries = 1000;
};

/// n independent transactions; transaction j draws from stream(seed, j), so
/// output is identical for any worker count.
Dataset generate_dataset_igm(const IgmModel& m, std::size_t n, std::uint64_t seed,
                             const IgmGenOptions& opts = {}, int threads = 0);

nlohmann::json igm_to_json(const IgmModel& m);
IgmModel igm_from_json(const nlohmann::json& j);

}  // namespace itemsynth
