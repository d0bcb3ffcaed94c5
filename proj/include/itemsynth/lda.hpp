#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "itemsynth/dataset.hpp"
#include "itemsynth/rng.hpp"

namespace itemsynth {

struct LdaLearnConfig {
  double alpha = -1.0;  // symmetric Dirichlet over topics; < 0 means 50/K
  double beta = 0.01;   // symmetric Dirichlet over words
  int iterations = 1000;
  int burnin = 200;
  int samples = 10;  // posterior mean over this many spaced post-burn-in states
  // Re-checks Gibbs count consistency after every iteration and throws on
  // violation. Cheap enough for tests, off by default.
  bool validate_counts = false;
};

struct LdaModel {
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<ItemId> alphabet;                 // word index -> item id, ascending
  std::vector<std::vector<double>> doc_topic;   // M x K, rows sum to 1
  std::vector<std::vector<double>> topic_word;  // K x V, rows sum to 1
  std::vector<std::uint32_t> lengths;           // N_i = |transaction i|

  // provenance
  double minsup = 0.0;  // minsup used by choose_k, when applicable
  int iterations = 0;
  int burnin = 0;
  int samples = 0;
  std::uint64_t seed = 0;

  std::size_t doc_count() const noexcept { return lengths.size(); }
};

/// Topic count rule: K = |FI(minsup)|. Throws when the mining result is empty.
int choose_k(const Dataset& d, double minsup);

/// Collapsed Gibbs sampling over token-topic assignments with the standard
/// conditional P(z=t|·) ∝ (n_dt + α)(n_tw + β)/(n_t + Vβ). θ and φ are the
/// smoothed posterior means averaged over spaced post-burn-in states.
LdaModel learn_lda(const Dataset& d, int k, const LdaLearnConfig& cfg, std::uint64_t seed);

struct LdaGenOptions {
  enum class DocPolicy { cycle, uniform };
  DocPolicy doc_policy = DocPolicy::cycle;  // transaction j reuses document j mod M
  int attempt_factor = 50;                  // draw cap = attempt_factor * N_i
};

struct LdaGenStats {
  std::uint64_t cap_firings = 0;  // transactions returned short of N_i
};

/// Precomputed per-row CDFs so repeated draws are O(log K + log V) each.
class LdaSampler {
 public:
  explicit LdaSampler(const LdaModel& m);

  /// Draws topic/word pairs and unions words until the transaction reaches
  /// N_doc items or the attempt cap fires (short result, counter bumped).
  Itemset draw(std::size_t doc, Rng& rng, const LdaGenOptions& opts = {},
               LdaGenStats* stats = nullptr) const;

  const LdaModel& model() const noexcept { return model_; }

 private:
  const LdaModel& model_;
  std::vector<std::vector<double>> theta_cdf_;
  std::vector<std::vector<double>> phi_cdf_;
};

Itemset generate_transaction_lda(const LdaModel& m, std::size_t doc, Rng& rng,
                                 const LdaGenOptions& opts = {}, LdaGenStats* stats = nullptr);

Dataset generate_dataset_lda(const LdaModel& m, std::size_t n, std::uint64_t seed,
                             const LdaGenOptions& opts = {}, LdaGenStats* stats = nullptr,
                             int threads = 0);

nlohmann::json lda_to_json(const LdaModel& m);
LdaModel lda_from_json(const nlohmann::json& j);

}  // namespace itemsynth
