#include "itemsynth/fim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "itemsynth/errors.hpp"

namespace itemsynth {

std::size_t min_support_count(double minsup, std::size_t dataset_size) {
  if (!(minsup > 0.0) || minsup > 1.0) {
    throw Error(ErrorCode::usage, "minsup out of range (must be in (0, 1])");
  }
  // The epsilon absorbs decimal-fraction rounding, e.g. 0.3 * 10 landing a
  // hair above 3.
  const double raw = std::ceil(minsup * static_cast<double>(dataset_size) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

namespace {

using Tidset = std::vector<std::uint32_t>;

struct Node {
  ItemId item;
  Tidset tids;
};

void intersect(const Tidset& a, const Tidset& b, Tidset& out) {
  out.clear();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      out.push_back(*ia);
      ++ia;
      ++ib;
    }
  }
}

void eclat_recurse(std::vector<ItemId>& prefix, const std::vector<Node>& nodes,
                   std::size_t min_count, std::vector<FrequentItemset>& out) {
  Tidset scratch;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    prefix.push_back(nodes[i].item);

    std::vector<ItemId> ids = prefix;
    std::sort(ids.begin(), ids.end());
    out.push_back({Itemset::from_sorted(std::move(ids)),
                   static_cast<std::uint32_t>(nodes[i].tids.size())});

    std::vector<Node> next;
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      intersect(nodes[i].tids, nodes[j].tids, scratch);
      if (scratch.size() >= min_count) next.push_back({nodes[j].item, scratch});
    }
    if (!next.empty()) eclat_recurse(prefix, next, min_count, out);
    prefix.pop_back();
  }
}

void canonicalize(std::vector<FrequentItemset>& itemsets) {
  std::sort(itemsets.begin(), itemsets.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              return canonical_less(a.items, b.items);
            });
}

}  // namespace

FrequentItemsetSet mine_frequent(const Dataset& d, double minsup) {
  if (d.size() == 0) throw Error(ErrorCode::usage, "cannot mine an empty dataset");
  const std::size_t min_count = min_support_count(minsup, d.size());

  std::map<ItemId, Tidset> vertical;
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    for (ItemId id : d.transaction(t)) vertical[id].push_back(t);
  }

  std::vector<Node> roots;
  for (auto& [item, tids] : vertical) {
    if (tids.size() >= min_count) roots.push_back({item, std::move(tids)});
  }
  // Ascending support is the usual Eclat processing order; the final
  // canonical sort makes it unobservable.
  std::sort(roots.begin(), roots.end(), [](const Node& a, const Node& b) {
    if (a.tids.size() != b.tids.size()) return a.tids.size() < b.tids.size();
    return a.item < b.item;
  });

  FrequentItemsetSet result;
  result.minsup = minsup;
  result.dataset_size = d.size();
  std::vector<ItemId> prefix;
  eclat_recurse(prefix, roots, min_count, result.itemsets);
  canonicalize(result.itemsets);
  return result;
}

FrequentItemsetSet brute_force_frequent(const Dataset& d, double minsup) {
  if (d.size() == 0) throw Error(ErrorCode::usage, "cannot mine an empty dataset");
  const auto& alphabet = d.alphabet().items();
  if (alphabet.size() > 20) {
    throw Error(ErrorCode::usage,
                "brute-force oracle refuses alphabets larger than 20 items (got " +
                    std::to_string(alphabet.size()) + ")");
  }
  const std::size_t min_count = min_support_count(minsup, d.size());
  const std::size_t v = alphabet.size();

  std::vector<std::uint32_t> tx_masks(d.size(), 0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    for (ItemId id : d.transaction(t)) {
      const auto pos = std::lower_bound(alphabet.begin(), alphabet.end(), id) - alphabet.begin();
      tx_masks[t] |= 1u << pos;
    }
  }

  FrequentItemsetSet result;
  result.minsup = minsup;
  result.dataset_size = d.size();
  const std::uint32_t limit = v >= 32 ? 0 : (1u << v);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::size_t count = 0;
    for (const std::uint32_t tm : tx_masks) {
      if ((mask & tm) == mask) ++count;
    }
    if (count < min_count) continue;
    std::vector<ItemId> ids;
    for (std::size_t bit = 0; bit < v; ++bit) {
      if (mask & (1u << bit)) ids.push_back(alphabet[bit]);
    }
    result.itemsets.push_back(
        {Itemset::from_sorted(std::move(ids)), static_cast<std::uint32_t>(count)});
  }
  canonicalize(result.itemsets);
  return result;
}

nlohmann::json frequent_to_json(const FrequentItemsetSet& fi) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& x : fi.itemsets) {
    items.push_back({{"items", x.items.items()}, {"support", x.support}});
  }
  return {{"minsup", fi.minsup}, {"dataset_size", fi.dataset_size}, {"itemsets", items}};
}

FrequentItemsetSet frequent_from_json(const nlohmann::json& j) {
  FrequentItemsetSet fi;
  fi.minsup = j.at("minsup").get<double>();
  fi.dataset_size = j.at("dataset_size").get<std::size_t>();
  for (const auto& entry : j.at("itemsets")) {
    fi.itemsets.push_back({Itemset::from_unsorted(entry.at("items").get<std::vector<ItemId>>()),
                           entry.at("support").get<std::uint32_t>()});
  }
  return fi;
}

void save_frequent_file(const FrequentItemsetSet& fi, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot open output file: " + path.string());
  out << frequent_to_json(fi).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io, "write failure: " + path.string());
}

FrequentItemsetSet load_frequent_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open input file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    return frequent_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io, "invalid itemset file " + path.string() + ": " + e.what());
  }
}

}  // namespace itemsynth
