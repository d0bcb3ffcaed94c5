#include "itemsynth/iim.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

#include "itemsynth/errors.hpp"
#include "itemsynth/parallel.hpp"

namespace itemsynth {

namespace {

// Larger size first, then higher p, then lexicographically smaller itemset.
bool better_pick(const IimComponent& a, const IimComponent& b) {
  if (a.itemset.size() != b.itemset.size()) return a.itemset.size() > b.itemset.size();
  if (a.p != b.p) return a.p > b.p;
  return lex_less(a.itemset, b.itemset);
}

double cover_cost(const CoverResult& c, double lambda) {
  return static_cast<double>(c.picked.size()) + lambda * static_cast<double>(c.uncovered.size());
}

}  // namespace

CoverResult greedy_cover(const Itemset& t, const std::vector<IimComponent>& components) {
  CoverResult res;
  Itemset remaining = t;
  while (!remaining.empty()) {
    std::size_t best = components.size();
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (components[i].itemset.size() > remaining.size()) continue;
      if (!remaining.contains_all(components[i].itemset)) continue;
      if (best == components.size() || better_pick(components[i], components[best])) best = i;
    }
    if (best == components.size()) break;
    res.picked.push_back(best);
    remaining = set_difference(remaining, components[best].itemset);
  }
  res.uncovered = std::move(remaining);
  return res;
}

IimModel learn_iim(const Dataset& d, const IimLearnConfig& cfg, IimLearnTrace* trace) {
  if (d.size() == 0) throw Error(ErrorCode::usage, "cannot learn from an empty dataset");
  if (cfg.rounds < 0) throw Error(ErrorCode::usage, "rounds must be >= 0");
  if (!(cfg.min_p > 0.0) || cfg.min_p > 1.0) {
    throw Error(ErrorCode::usage, "min_p must be in (0, 1]");
  }
  const double n = static_cast<double>(d.size());

  std::vector<IimComponent> comps;
  std::vector<double> raw;  // usage-based rate before flooring
  std::set<std::vector<ItemId>> known;
  for (ItemId id : d.alphabet()) {
    const Itemset single = Itemset::from_sorted({id});
    const double p = static_cast<double>(support(d, single)) / n;
    comps.push_back({single, p});
    raw.push_back(p);
    known.insert(single.items());
  }

  std::vector<CoverResult> covers(d.size());
  double total_cost = 0.0;
  auto recompute_all = [&] {
    total_cost = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
      covers[t] = greedy_cover(d.transaction(t), comps);
      total_cost += cover_cost(covers[t], cfg.lambda);
    }
  };
  recompute_all();
  if (trace) trace->round_costs.push_back(total_cost);

  for (int round = 0; round < cfg.rounds; ++round) {
    // Candidate proposals: unions of component pairs that co-occur in covers.
    std::unordered_map<std::uint64_t, std::uint32_t> pair_counts;
    for (const auto& cov : covers) {
      for (std::size_t a = 0; a < cov.picked.size(); ++a) {
        for (std::size_t b = a + 1; b < cov.picked.size(); ++b) {
          const std::uint64_t lo = std::min(cov.picked[a], cov.picked[b]);
          const std::uint64_t hi = std::max(cov.picked[a], cov.picked[b]);
          ++pair_counts[(lo << 32) | hi];
        }
      }
    }

    struct Candidate {
      Itemset u;
      std::uint32_t count;
    };
    std::map<std::vector<ItemId>, std::uint32_t> merged;
    for (const auto& [key, count] : pair_counts) {
      if (count + 1e-9 < cfg.min_p * n) continue;
      const Itemset u =
          set_union(comps[key >> 32].itemset, comps[key & 0xffffffffull].itemset);
      if (known.count(u.items())) continue;
      auto [it, inserted] = merged.emplace(u.items(), count);
      if (!inserted) it->second = std::max(it->second, count);
    }
    std::vector<Candidate> candidates;
    candidates.reserve(merged.size());
    for (auto& [items, count] : merged) {
      candidates.push_back({Itemset::from_sorted(items), count});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.count != b.count) return a.count > b.count;
      return lex_less(a.u, b.u);
    });
    if (candidates.size() > static_cast<std::size_t>(cfg.max_candidates_per_round)) {
      candidates.resize(static_cast<std::size_t>(cfg.max_candidates_per_round));
    }

    for (const auto& cand : candidates) {
      std::vector<std::uint32_t> tids;
      for (std::uint32_t t = 0; t < d.size(); ++t) {
        if (d.transaction(t).contains_all(cand.u)) tids.push_back(t);
      }
      // Candidates come from co-occurring covers, so support is never zero.
      comps.push_back({cand.u, static_cast<double>(tids.size()) / n});

      // Only transactions containing the union can change their cover.
      std::vector<CoverResult> changed(tids.size());
      double delta = 0.0;
      for (std::size_t i = 0; i < tids.size(); ++i) {
        changed[i] = greedy_cover(d.transaction(tids[i]), comps);
        delta += cover_cost(changed[i], cfg.lambda) - cover_cost(covers[tids[i]], cfg.lambda);
      }
      if (delta < -1e-12) {
        for (std::size_t i = 0; i < tids.size(); ++i) covers[tids[i]] = std::move(changed[i]);
        total_cost += delta;
        known.insert(cand.u.items());
        raw.push_back(comps.back().p);
      } else {
        comps.pop_back();
      }
    }

    // Re-estimate every p as the cover-usage rate, floored at min_p.
    std::vector<std::uint32_t> usage(comps.size(), 0);
    for (const auto& cov : covers) {
      for (std::size_t idx : cov.picked) ++usage[idx];
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      raw[i] = static_cast<double>(usage[i]) / n;
      comps[i].p = std::max(raw[i], cfg.min_p);
    }
    recompute_all();
    if (trace) trace->round_costs.push_back(total_cost);
  }

  // Drop components whose usage fell below min_p; singletons survive when
  // they are the only way to generate their item.
  std::vector<bool> kept(comps.size(), false);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    kept[i] = raw[i] + 1e-12 >= cfg.min_p;
  }
  for (ItemId id : d.alphabet()) {
    bool covered = false;
    std::size_t singleton = comps.size();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (kept[i] && comps[i].itemset.contains(id)) covered = true;
      if (comps[i].itemset.size() == 1 && comps[i].itemset.items()[0] == id) singleton = i;
    }
    if (!covered) kept[singleton] = true;
  }

  IimModel model;
  model.alphabet = d.alphabet();
  model.source_size = d.size();
  model.config = cfg;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (kept[i]) model.components.push_back(comps[i]);
  }
  std::sort(model.components.begin(), model.components.end(),
            [](const IimComponent& a, const IimComponent& b) {
              return canonical_less(a.itemset, b.itemset);
            });

  // Final re-estimation over the surviving set: covers that used dropped
  // components fall back to the survivors, so the usage mass (and with it the
  // expected transaction size) is not lost with the drop.
  std::vector<std::uint32_t> final_usage(model.components.size(), 0);
  for (const auto& t : d.transactions()) {
    for (std::size_t idx : greedy_cover(t, model.components).picked) ++final_usage[idx];
  }
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    model.components[i].p =
        std::max(static_cast<double>(final_usage[i]) / n, cfg.min_p);
  }
  return model;
}

Itemset generate_transaction_iim(const IimModel& m, Rng& rng, const IimGenOptions& opts) {
  for (int attempt = 0;; ++attempt) {
    std::vector<ItemId> acc;
    for (const auto& c : m.components) {
      if (rng.bernoulli(c.p)) acc.insert(acc.end(), c.itemset.begin(), c.itemset.end());
    }
    Itemset t = Itemset::from_unsorted(std::move(acc));
    if (!t.empty() || !opts.retry_empty || attempt >= opts.max_retries) return t;
  }
}

Dataset generate_dataset_iim(const IimModel& m, std::size_t n, std::uint64_t seed,
                             const IimGenOptions& opts, int threads) {
  if (n < 1) throw Error(ErrorCode::usage, "dataset size must be >= 1");
  std::vector<Itemset> transactions(n);
  parallel_for(n, threads, [&](std::size_t j) {
    Rng rng = Rng::stream(seed, j);
    transactions[j] = generate_transaction_iim(m, rng, opts);
  });
  return Dataset(std::move(transactions));
}

nlohmann::json iim_to_json(const IimModel& m) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : m.components) {
    components.push_back({{"items", c.itemset.items()}, {"p", c.p}});
  }
  return {{"kind", "iim"},
          {"source_size", m.source_size},
          {"alphabet", m.alphabet.items()},
          {"components", components},
          {"provenance",
           {{"rounds", m.config.rounds},
            {"max_candidates_per_round", m.config.max_candidates_per_round},
            {"min_p", m.config.min_p},
            {"lambda", m.config.lambda}}}};
}

IimModel iim_from_json(const nlohmann::json& j) {
  IimModel m;
  m.source_size = j.at("source_size").get<std::size_t>();
  m.alphabet = Itemset::from_unsorted(j.at("alphabet").get<std::vector<ItemId>>());
  for (const auto& entry : j.at("components")) {
    m.components.push_back({Itemset::from_unsorted(entry.at("items").get<std::vector<ItemId>>()),
                            entry.at("p").get<double>()});
  }
  const auto& prov = j.at("provenance");
  m.config.rounds = prov.at("rounds").get<int>();
  m.config.max_candidates_per_round = prov.at("max_candidates_per_round").get<int>();
  m.config.min_p = prov.at("min_p").get<double>();
  m.config.lambda = prov.at("lambda").get<double>();
  return m;
}

}  // namespace itemsynth
