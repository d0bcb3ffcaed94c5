#include "itemsynth/lda.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <string>

#include "itemsynth/errors.hpp"
#include "itemsynth/fim.hpp"
#include "itemsynth/parallel.hpp"

namespace itemsynth {

int choose_k(const Dataset& d, double minsup) {
  const FrequentItemsetSet fi = mine_frequent(d, minsup);
  if (fi.itemsets.empty()) {
    throw Error(ErrorCode::degenerate, "K would be zero; lower minsup");
  }
  return static_cast<int>(fi.itemsets.size());
}

namespace {

struct GibbsState {
  int k = 0;
  std::size_t v = 0;
  std::size_t docs = 0;
  std::vector<std::size_t> doc_offset;  // docs + 1
  std::vector<std::uint32_t> token_word;
  std::vector<int> token_topic;
  std::vector<int> n_dt;  // docs x k
  std::vector<int> n_tw;  // k x v
  std::vector<int> n_t;   // k

  void check_counts() const {
    for (std::size_t m = 0; m < docs; ++m) {
      long long sum = 0;
      for (int t = 0; t < k; ++t) sum += n_dt[m * k + t];
      if (sum != static_cast<long long>(doc_offset[m + 1] - doc_offset[m])) {
        throw Error(ErrorCode::degenerate, "gibbs count inconsistency: document " +
                                               std::to_string(m) + " topic counts do not sum to N");
      }
    }
    for (int t = 0; t < k; ++t) {
      long long sum = 0;
      for (std::size_t w = 0; w < v; ++w) sum += n_tw[static_cast<std::size_t>(t) * v + w];
      if (sum != n_t[t]) {
        throw Error(ErrorCode::degenerate, "gibbs count inconsistency: topic " +
                                               std::to_string(t) + " word counts do not sum");
      }
    }
  }
};

}  // namespace

LdaModel learn_lda(const Dataset& d, int k, const LdaLearnConfig& cfg, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::usage, "topic count must be >= 1");
  if (d.size() == 0) throw Error(ErrorCode::usage, "cannot learn from an empty dataset");
  if (cfg.iterations < 1) throw Error(ErrorCode::usage, "iterations must be >= 1");
  if (cfg.burnin < 0 || cfg.burnin >= cfg.iterations) {
    throw Error(ErrorCode::usage, "burnin must be in [0, iterations)");
  }
  if (cfg.samples < 1) throw Error(ErrorCode::usage, "samples must be >= 1");
  if (!(cfg.beta > 0.0)) throw Error(ErrorCode::usage, "beta must be > 0");

  const double alpha = cfg.alpha > 0.0 ? cfg.alpha : 50.0 / k;
  const double beta = cfg.beta;

  GibbsState st;
  st.k = k;
  st.docs = d.size();
  const auto& vocab = d.alphabet().items();
  st.v = vocab.size();

  st.doc_offset.assign(st.docs + 1, 0);
  for (std::size_t m = 0; m < st.docs; ++m) {
    st.doc_offset[m + 1] = st.doc_offset[m] + d.transaction(m).size();
  }
  st.token_word.reserve(st.doc_offset.back());
  for (std::size_t m = 0; m < st.docs; ++m) {
    for (ItemId id : d.transaction(m)) {
      const auto pos = std::lower_bound(vocab.begin(), vocab.end(), id) - vocab.begin();
      st.token_word.push_back(static_cast<std::uint32_t>(pos));
    }
  }

  st.token_topic.assign(st.token_word.size(), 0);
  st.n_dt.assign(st.docs * k, 0);
  st.n_tw.assign(static_cast<std::size_t>(k) * st.v, 0);
  st.n_t.assign(k, 0);

  Rng rng = Rng::stream(seed, 0);
  for (std::size_t m = 0; m < st.docs; ++m) {
    for (std::size_t pos = st.doc_offset[m]; pos < st.doc_offset[m + 1]; ++pos) {
      const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
      st.token_topic[pos] = t;
      ++st.n_dt[m * k + t];
      ++st.n_tw[static_cast<std::size_t>(t) * st.v + st.token_word[pos]];
      ++st.n_t[t];
    }
  }

  // Posterior-mean accumulation at spaced states counted back from the final
  // iteration, so the last state is always included.
  const int span = cfg.iterations - cfg.burnin;
  const int samples = std::min(cfg.samples, span);
  const int spacing = std::max(1, span / samples);
  std::set<int> collect_at;
  for (int j = 0; j < samples; ++j) collect_at.insert(cfg.iterations - j * spacing);

  std::vector<double> theta_acc(st.docs * k, 0.0);
  std::vector<double> phi_acc(static_cast<std::size_t>(k) * st.v, 0.0);
  int collected = 0;

  const double v_beta = static_cast<double>(st.v) * beta;
  std::vector<double> cdf(k);

  for (int iter = 1; iter <= cfg.iterations; ++iter) {
    for (std::size_t m = 0; m < st.docs; ++m) {
      int* doc_counts = st.n_dt.data() + m * k;
      for (std::size_t pos = st.doc_offset[m]; pos < st.doc_offset[m + 1]; ++pos) {
        const std::uint32_t w = st.token_word[pos];
        const int old_t = st.token_topic[pos];
        --doc_counts[old_t];
        --st.n_tw[static_cast<std::size_t>(old_t) * st.v + w];
        --st.n_t[old_t];

        double total = 0.0;
        for (int t = 0; t < k; ++t) {
          total += (doc_counts[t] + alpha) *
                   (st.n_tw[static_cast<std::size_t>(t) * st.v + w] + beta) /
                   (st.n_t[t] + v_beta);
          cdf[t] = total;
        }
        const int new_t = static_cast<int>(rng.categorical_cdf(cdf));
        st.token_topic[pos] = new_t;
        ++doc_counts[new_t];
        ++st.n_tw[static_cast<std::size_t>(new_t) * st.v + w];
        ++st.n_t[new_t];
      }
    }

    if (cfg.validate_counts) st.check_counts();
#ifndef NDEBUG
    st.check_counts();
#endif

    if (collect_at.count(iter)) {
      ++collected;
      for (std::size_t m = 0; m < st.docs; ++m) {
        const double denom = static_cast<double>(st.doc_offset[m + 1] - st.doc_offset[m]) +
                             static_cast<double>(k) * alpha;
        for (int t = 0; t < k; ++t) {
          theta_acc[m * k + t] += (st.n_dt[m * k + t] + alpha) / denom;
        }
      }
      for (int t = 0; t < k; ++t) {
        const double denom = st.n_t[t] + v_beta;
        for (std::size_t w = 0; w < st.v; ++w) {
          phi_acc[static_cast<std::size_t>(t) * st.v + w] +=
              (st.n_tw[static_cast<std::size_t>(t) * st.v + w] + beta) / denom;
        }
      }
    }
  }

  LdaModel model;
  model.k = k;
  model.alpha = alpha;
  model.beta = beta;
  model.alphabet = vocab;
  model.iterations = cfg.iterations;
  model.burnin = cfg.burnin;
  model.samples = samples;
  model.seed = seed;

  model.lengths.reserve(st.docs);
  for (std::size_t m = 0; m < st.docs; ++m) {
    model.lengths.push_back(static_cast<std::uint32_t>(d.transaction(m).size()));
  }
  model.doc_topic.assign(st.docs, std::vector<double>(k));
  for (std::size_t m = 0; m < st.docs; ++m) {
    for (int t = 0; t < k; ++t) model.doc_topic[m][t] = theta_acc[m * k + t] / collected;
  }
  model.topic_word.assign(k, std::vector<double>(st.v));
  for (int t = 0; t < k; ++t) {
    for (std::size_t w = 0; w < st.v; ++w) {
      model.topic_word[t][w] = phi_acc[static_cast<std::size_t>(t) * st.v + w] / collected;
    }
  }
  return model;
}

LdaSampler::LdaSampler(const LdaModel& m) : model_(m) {
  theta_cdf_.reserve(m.doc_topic.size());
  for (const auto& row : m.doc_topic) {
    std::vector<double> cdf(row.size());
    double total = 0.0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      total += row[t];
      cdf[t] = total;
    }
    theta_cdf_.push_back(std::move(cdf));
  }
  phi_cdf_.reserve(m.topic_word.size());
  for (const auto& row : m.topic_word) {
    std::vector<double> cdf(row.size());
    double total = 0.0;
    for (std::size_t w = 0; w < row.size(); ++w) {
      total += row[w];
      cdf[w] = total;
    }
    phi_cdf_.push_back(std::move(cdf));
  }
}

Itemset LdaSampler::draw(std::size_t doc, Rng& rng, const LdaGenOptions& opts,
                         LdaGenStats* stats) const {
  const std::uint32_t target = model_.lengths.at(doc);
  const long long cap = static_cast<long long>(opts.attempt_factor) * target;
  std::set<ItemId> acc;
  long long attempts = 0;
  while (acc.size() < target && attempts < cap) {
    ++attempts;
    const std::size_t t = rng.categorical_cdf(theta_cdf_[doc]);
    const std::size_t w = rng.categorical_cdf(phi_cdf_[t]);
    acc.insert(model_.alphabet[w]);
  }
  if (acc.size() < target && stats) ++stats->cap_firings;
  return Itemset::from_sorted(std::vector<ItemId>(acc.begin(), acc.end()));
}

Itemset generate_transaction_lda(const LdaModel& m, std::size_t doc, Rng& rng,
                                 const LdaGenOptions& opts, LdaGenStats* stats) {
  return LdaSampler(m).draw(doc, rng, opts, stats);
}

Dataset generate_dataset_lda(const LdaModel& m, std::size_t n, std::uint64_t seed,
                             const LdaGenOptions& opts, LdaGenStats* stats, int threads) {
  if (n < 1) throw Error(ErrorCode::usage, "dataset size must be >= 1");
  const LdaSampler sampler(m);
  const std::size_t docs = m.doc_count();
  std::vector<Itemset> transactions(n);
  std::vector<std::uint8_t> capped(n, 0);
  parallel_for(n, threads, [&](std::size_t j) {
    Rng rng = Rng::stream(seed, j);
    std::size_t doc;
    if (opts.doc_policy == LdaGenOptions::DocPolicy::uniform) {
      doc = static_cast<std::size_t>(rng.below(docs));
    } else {
      doc = j % docs;
    }
    LdaGenStats local;
    transactions[j] = sampler.draw(doc, rng, opts, &local);
    capped[j] = local.cap_firings > 0 ? 1 : 0;
  });
  if (stats) {
    for (std::size_t j = 0; j < n; ++j) stats->cap_firings += capped[j];
  }
  return Dataset(std::move(transactions));
}

nlohmann::json lda_to_json(const LdaModel& m) {
  return {{"kind", "lda"},
          {"k", m.k},
          {"alpha", m.alpha},
          {"beta", m.beta},
          {"alphabet", m.alphabet},
          {"doc_topic", m.doc_topic},
          {"topic_word", m.topic_word},
          {"lengths", m.lengths},
          {"provenance",
           {{"minsup", m.minsup},
            {"iterations", m.iterations},
            {"burnin", m.burnin},
            {"samples", m.samples},
            {"seed", m.seed}}}};
}

LdaModel lda_from_json(const nlohmann::json& j) {
  LdaModel m;
  m.k = j.at("k").get<int>();
  m.alpha = j.at("alpha").get<double>();
  m.beta = j.at("beta").get<double>();
  m.alphabet = j.at("alphabet").get<std::vector<ItemId>>();
  m.doc_topic = j.at("doc_topic").get<std::vector<std::vector<double>>>();
  m.topic_word = j.at("topic_word").get<std::vector<std::vector<double>>>();
  m.lengths = j.at("lengths").get<std::vector<std::uint32_t>>();
  const auto& prov = j.at("provenance");
  m.minsup = prov.at("minsup").get<double>();
  m.iterations = prov.at("iterations").get<int>();
  m.burnin = prov.at("burnin").get<int>();
  m.samples = prov.at("samples").get<int>();
  m.seed = prov.at("seed").get<std::uint64_t>();
  return m;
}

}  // namespace itemsynth
