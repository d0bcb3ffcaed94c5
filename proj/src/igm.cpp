#include "itemsynth/igm.hpp"

#include <algorithm>
#include <string>

#include "itemsynth/errors.hpp"
#include "itemsynth/parallel.hpp"

namespace itemsynth {

namespace {

// support/|D| > 2^-k, evaluated exactly as support * 2^k > |D|.
bool is_significant(std::uint64_t sup, std::uint64_t dataset_size, std::size_t k) {
  if (sup == 0) return false;
  if (k >= 64) return true;  // 2^-k below any representable frequency
  return (static_cast<unsigned __int128>(sup) << k) > dataset_size;
}

// One fair coin per item.
Itemset fair_subset(const Itemset& universe, Rng& rng) {
  std::vector<ItemId> picked;
  for (ItemId id : universe) {
    if (rng.next_u64() & 1u) picked.push_back(id);
  }
  return Itemset::from_sorted(std::move(picked));
}

// Size buckets and per-bucket component CDFs for two-stage selection.
struct IgmSamplerContext {
  explicit IgmSamplerContext(const IgmModel& m) : model(m) {
    for (const auto& [size, prob] : m.size_weights) {
      sizes.push_back(size);
      size_cdf.push_back((size_cdf.empty() ? 0.0 : size_cdf.back()) + prob);
    }
    bucket_indices.resize(sizes.size());
    bucket_cdf.resize(sizes.size());
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      const auto it = std::find(sizes.begin(), sizes.end(), m.components[i].itemset.size());
      const std::size_t b = static_cast<std::size_t>(it - sizes.begin());
      bucket_indices[b].push_back(i);
      bucket_cdf[b].push_back((bucket_cdf[b].empty() ? 0.0 : bucket_cdf[b].back()) +
                              m.components[i].weight);
    }
  }

  std::size_t draw_component(Rng& rng) const {
    const std::size_t b = rng.categorical_cdf(size_cdf);
    return bucket_indices[b][rng.categorical_cdf(bucket_cdf[b])];
  }

  Itemset draw_transaction(Rng& rng, IgmDrawInfo* info) const {
    const std::size_t ci = draw_component(rng);
    const IgmComponent& c = model.components[ci];
    const Itemset pattern = sample_pattern(c.itemset, c.theta, rng);
    const Itemset& universe =
        model.noise_universe == NoiseUniverse::full ? model.alphabet : model.effective_alphabet;
    const Itemset noise = sample_noise(c.itemset, universe, rng);
    if (info) {
      info->component_index = ci;
      info->pattern_full = pattern == c.itemset;
    }
    return set_union(pattern, noise);
  }

  const IgmModel& model;
  std::vector<std::size_t> sizes;
  std::vector<double> size_cdf;
  std::vector<std::vector<std::size_t>> bucket_indices;
  std::vector<std::vector<double>> bucket_cdf;
};

}  // namespace

std::vector<IgmComponent> filter_significant(const FrequentItemsetSet& fi,
                                             std::size_t dataset_size) {
  std::vector<IgmComponent> kept;
  for (const auto& x : fi.itemsets) {
    if (!is_significant(x.support, dataset_size, x.items.size())) continue;
    kept.push_back({x.items, static_cast<double>(x.support) / static_cast<double>(dataset_size),
                    static_cast<double>(x.support)});
  }
  if (kept.empty()) {
    throw Error(ErrorCode::degenerate, "no significant itemsets; lower minsup");
  }
  return kept;
}

IgmModel learn_igm(const Dataset& d, double minsup, NoiseUniverse noise_universe) {
  const FrequentItemsetSet fi = mine_frequent(d, minsup);
  if (fi.itemsets.empty()) {
    throw Error(ErrorCode::degenerate, "no significant itemsets; lower minsup");
  }

  IgmModel m;
  m.components = filter_significant(fi, d.size());
  m.source_size = d.size();
  m.minsup = minsup;
  m.noise_universe = noise_universe;
  m.alphabet = d.alphabet();

  Itemset effective;
  double total = 0.0;
  for (const auto& c : m.components) {
    effective = set_union(effective, c.itemset);
    m.size_weights[c.itemset.size()] += c.weight;
    total += c.weight;
  }
  for (auto& [size, w] : m.size_weights) w /= total;
  m.effective_alphabet = std::move(effective);
  return m;
}

Itemset sample_pattern(const Itemset& x, double theta, Rng& rng) {
  if (rng.bernoulli(theta)) return x;
  // Rejecting the full set leaves the 2^|x|-1 proper subsets exactly uniform.
  for (;;) {
    Itemset s = fair_subset(x, rng);
    if (!(s == x)) return s;
  }
}

Itemset sample_noise(const Itemset& x, const Itemset& universe, Rng& rng) {
  return fair_subset(set_difference(universe, x), rng);
}

Itemset generate_transaction_igm(const IgmModel& m, Rng& rng, IgmDrawInfo* info) {
  return IgmSamplerContext(m).draw_transaction(rng, info);
}

Dataset generate_dataset_igm(const IgmModel& m, std::size_t n, std::uint64_t seed,
                             const IgmGenOptions& opts, int threads) {
  if (n < 1) throw Error(ErrorCode::usage, "dataset size must be >= 1");
  const IgmSamplerContext ctx(m);
  std::vector<Itemset> transactions(n);
  parallel_for(n, threads, [&](std::size_t j) {
    Rng rng = Rng::stream(seed, j);
    Itemset t = ctx.draw_transaction(rng, nullptr);
    for (int retry = 0; t.empty() && opts.retry_empty && retry < opts.max_retries; ++retry) {
      t = ctx.draw_transaction(rng, nullptr);
    }
    transactions[j] = std::move(t);
  });
  return Dataset(std::move(transactions));
}

nlohmann::json igm_to_json(const IgmModel& m) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : m.components) {
    components.push_back(
        {{"items", c.itemset.items()}, {"theta", c.theta}, {"weight", c.weight}});
  }
  nlohmann::json size_weights = nlohmann::json::object();
  for (const auto& [size, w] : m.size_weights) size_weights[std::to_string(size)] = w;
  return {{"kind", "igm"},
          {"source_size", m.source_size},
          {"minsup", m.minsup},
          {"noise_universe", m.noise_universe == NoiseUniverse::full ? "full" : "effective"},
          {"alphabet", m.alphabet.items()},
          {"effective_alphabet", m.effective_alphabet.items()},
          {"size_weights", size_weights},
          {"components", components}};
}

IgmModel igm_from_json(const nlohmann::json& j) {
  IgmModel m;
  m.source_size = j.at("source_size").get<std::size_t>();
  m.minsup = j.at("minsup").get<double>();
  m.noise_universe = j.at("noise_universe").get<std::string>() == "full" ? NoiseUniverse::full
                                                                         : NoiseUniverse::effective;
  m.alphabet = Itemset::from_unsorted(j.at("alphabet").get<std::vector<ItemId>>());
  m.effective_alphabet =
      Itemset::from_unsorted(j.at("effective_alphabet").get<std::vector<ItemId>>());
  for (const auto& [key, value] : j.at("size_weights").items()) {
    m.size_weights[std::stoul(key)] = value.get<double>();
  }
  for (const auto& entry : j.at("components")) {
    m.components.push_back({Itemset::from_unsorted(entry.at("items").get<std::vector<ItemId>>()),
                            entry.at("theta").get<double>(), entry.at("weight").get<double>()});
  }
  return m;
}

}  // namespace itemsynth
