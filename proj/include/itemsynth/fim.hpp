#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "json.hpp"

#include "itemsynth/dataset.hpp"

namespace itemsynth {

struct FrequentItemset {
  Itemset items;
  std::uint32_t support = 0;
};

struct FrequentItemsetSet {
  double minsup = 0.0;
  std::size_t dataset_size = 0;
  std::vector<FrequentItemset> itemsets;  // canonical order: size asc, then lex
};

/// Absolute count threshold: ceil(minsup * n), with a small epsilon so the
/// product of a decimal fraction and an integer does not round the wrong way.
/// Throws if minsup is outside (0, 1].
std::size_t min_support_count(double minsup, std::size_t dataset_size);

/// Eclat over sorted tidsets (depth-first, ascending-support item order).
/// Returns exactly the nonempty itemsets with support >= ceil(minsup * |d|),
/// canonically ordered.
FrequentItemsetSet mine_frequent(const Dataset& d, double minsup);

/// Exhaustive oracle: enumerates all nonempty subsets of the alphabet.
/// Refuses alphabets larger than 20 items.
FrequentItemsetSet brute_force_frequent(const Dataset& d, double minsup);

nlohmann::json frequent_to_json(const FrequentItemsetSet& fi);
FrequentItemsetSet frequent_from_json(const nlohmann::json& j);
void save_frequent_file(const FrequentItemsetSet& fi, const std::filesystem::path& path);
FrequentItemsetSet load_frequent_file(const std::filesystem::path& path);

}  // namespace itemsynth
