#include "doctest.h"

#include <cmath>
#include <map>

#include "itemsynth/errors.hpp"
#include "itemsynth/igm.hpp"
#include "test_util.hpp"

using namespace itemsynth;

TEST_CASE("filter_significant: strict 1/2^|X| threshold, theta = frequency") {
  FrequentItemsetSet fi;
  fi.dataset_size = 4;
  fi.itemsets = {{testutil::items({1}), 3},      // 0.75 > 0.5 -> kept
                 {testutil::items({1, 2}), 2},   // 0.5 > 0.25 -> kept
                 {testutil::items({2, 3}), 1}};  // 0.25 <= 0.25 -> dropped
  const auto kept = filter_significant(fi, 4);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].itemset == testutil::items({1}));
  CHECK(kept[0].theta == doctest::Approx(0.75));
  CHECK(kept[1].itemset == testutil::items({1, 2}));
  CHECK(kept[1].theta == doctest::Approx(0.5));

  FrequentItemsetSet nothing;
  nothing.dataset_size = 4;
  nothing.itemsets = {{testutil::items({5}), 1}};  // 0.25 <= 0.5
  CHECK_THROWS_AS(filter_significant(nothing, 4), Error);
}

TEST_CASE("learn_igm on the toy dataset") {
  const IgmModel m = learn_igm(testutil::d4(), 0.5);
  CHECK(m.components.size() == 6);
  CHECK(m.source_size == 4);
  CHECK(m.effective_alphabet == testutil::items({1, 2, 3}));
  REQUIRE(m.size_weights.size() == 2);
  CHECK(m.size_weights.at(1) == doctest::Approx(9.0 / 15.0));
  CHECK(m.size_weights.at(2) == doctest::Approx(6.0 / 15.0));

  try {
    learn_igm(testutil::d4(), 1.0);
    FAIL("expected degenerate-model error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
    CHECK(std::string(e.what()).find("no significant itemsets") != std::string::npos);
  }
}

TEST_CASE("learn_igm on ten copies of a single item") {
  std::vector<Itemset> rows(10, testutil::items({7}));
  const IgmModel m = learn_igm(Dataset(std::move(rows)), 0.5);
  REQUIRE(m.components.size() == 1);
  CHECK(m.components[0].itemset == testutil::items({7}));
  CHECK(m.components[0].theta == doctest::Approx(1.0));
  CHECK(m.size_weights.at(1) == doctest::Approx(1.0));
}

TEST_CASE("sample_pattern follows the pattern law") {
  Rng rng(11);
  const Itemset x = testutil::items({4, 9});

  for (int i = 0; i < 50; ++i) CHECK(sample_pattern(x, 1.0, rng) == x);

  // theta = 0.4: the full set 40%, each of {}, {4}, {9} at 20%.
  std::map<std::vector<ItemId>, int> counts;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) ++counts[sample_pattern(x, 0.4, rng).items()];
  CHECK(std::abs(counts[{4, 9}] / double(draws) - 0.4) < 0.02);
  CHECK(std::abs(counts[{}] / double(draws) - 0.2) < 0.02);
  CHECK(std::abs(counts[{4}] / double(draws) - 0.2) < 0.02);
  CHECK(std::abs(counts[{9}] / double(draws) - 0.2) < 0.02);

  // |x| = 1: only proper subset is the empty set.
  const Itemset one = testutil::items({3});
  int full = 0;
  for (int i = 0; i < draws; ++i) {
    const Itemset s = sample_pattern(one, 0.75, rng);
    REQUIRE((s == one || s.empty()));
    if (s == one) ++full;
  }
  CHECK(std::abs(full / double(draws) - 0.75) < 0.02);
}

TEST_CASE("sample_noise: uniform subset of the complement") {
  Rng rng(13);
  const Itemset universe = testutil::items({1, 2, 3, 4, 5});
  const Itemset x = testutil::items({1, 2});

  CHECK(sample_noise(universe, universe, rng).empty());

  const int draws = 40000;
  std::map<ItemId, int> inclusion;
  for (int i = 0; i < draws; ++i) {
    const Itemset noise = sample_noise(x, universe, rng);
    CHECK(noise.intersection_size(x) == 0);
    for (ItemId id : noise) ++inclusion[id];
  }
  for (ItemId id : {3u, 4u, 5u}) {
    CHECK(std::abs(inclusion[id] / double(draws) - 0.5) < 0.02);
  }
}

TEST_CASE("generate_transaction_igm composes pattern and noise") {
  IgmModel certain;
  certain.components = {{testutil::items({1, 2}), 1.0, 1.0}};
  certain.effective_alphabet = testutil::items({1, 2});
  certain.alphabet = certain.effective_alphabet;
  certain.size_weights[2] = 1.0;
  certain.source_size = 1;
  Rng rng(17);
  for (int i = 0; i < 50; ++i) CHECK(generate_transaction_igm(certain, rng) == testutil::items({1, 2}));

  IgmModel split;
  split.components = {{testutil::items({1}), 1.0, 1.0}};
  split.effective_alphabet = testutil::items({1, 2});
  split.alphabet = split.effective_alphabet;
  split.size_weights[1] = 1.0;
  split.source_size = 1;
  int both = 0;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    const Itemset t = generate_transaction_igm(split, rng);
    REQUIRE((t == testutil::items({1}) || t == testutil::items({1, 2})));
    if (t.size() == 2) ++both;
  }
  CHECK(std::abs(both / double(draws) - 0.5) < 0.02);
}

TEST_CASE("generated transactions stay inside the effective alphabet") {
  const IgmModel m = learn_igm(testutil::d4(), 0.5);
  Rng rng(23);
  double full_pattern = 0;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    IgmDrawInfo info;
    const Itemset t = generate_transaction_igm(m, rng, &info);
    CHECK(m.effective_alphabet.contains_all(t));
    if (info.pattern_full) {
      CHECK(t.contains_all(m.components[info.component_index].itemset));
      ++full_pattern;
    }
  }
  // Mixture expectation: sum_k w_k * sum_X (weight/total) * theta = 0.65 on d4@0.5.
  CHECK(std::abs(full_pattern / draws - 0.65) < 0.02);
}

TEST_CASE("noise universe: full reaches items outside the effective alphabet") {
  // Item 9 appears once in 4 transactions, so it is never significant.
  const Dataset d = testutil::dataset({{1, 2}, {1, 2, 9}, {1, 2}, {1, 2}});
  const IgmModel effective = learn_igm(d, 0.5, NoiseUniverse::effective);
  const IgmModel full = learn_igm(d, 0.5, NoiseUniverse::full);
  CHECK_FALSE(effective.effective_alphabet.contains(9));
  CHECK(full.alphabet.contains(9));

  Rng rng(29);
  bool nine_seen = false;
  for (int i = 0; i < 2000; ++i) {
    CHECK_FALSE(generate_transaction_igm(effective, rng).contains(9));
    if (generate_transaction_igm(full, rng).contains(9)) nine_seen = true;
  }
  CHECK(nine_seen);
}

TEST_CASE("retry_empty redraws empty transactions") {
  IgmModel m;
  m.components = {{testutil::items({1}), 0.5, 1.0}};
  m.effective_alphabet = testutil::items({1});
  m.alphabet = m.effective_alphabet;
  m.size_weights[1] = 1.0;
  m.source_size = 1;

  const Dataset keep = generate_dataset_igm(m, 500, 77, {.retry_empty = false});
  bool empty_seen = false;
  for (const auto& t : keep.transactions()) empty_seen |= t.empty();
  CHECK(empty_seen);

  const Dataset retried = generate_dataset_igm(m, 500, 77, {.retry_empty = true});
  for (const auto& t : retried.transactions()) CHECK_FALSE(t.empty());
}

TEST_CASE("generate_dataset_igm: size, determinism") {
  const IgmModel m = learn_igm(testutil::d4(), 0.5);
  const Dataset a = generate_dataset_igm(m, 123, 42);
  CHECK(a.size() == 123);
  const Dataset single = generate_dataset_igm(m, 1, 42);
  CHECK(single.size() == 1);

  const Dataset b = generate_dataset_igm(m, 123, 42);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.transaction(i) == b.transaction(i));
}

TEST_CASE("model JSON round trip") {
  const IgmModel m = learn_igm(testutil::d4(), 0.5, NoiseUniverse::full);
  const IgmModel back = igm_from_json(igm_to_json(m));
  CHECK(back.source_size == m.source_size);
  CHECK(back.minsup == m.minsup);
  CHECK(back.noise_universe == m.noise_universe);
  CHECK(back.effective_alphabet == m.effective_alphabet);
  CHECK(back.alphabet == m.alphabet);
  CHECK(back.size_weights == m.size_weights);
  REQUIRE(back.components.size() == m.components.size());
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    CHECK(back.components[i].itemset == m.components[i].itemset);
    CHECK(back.components[i].theta == m.components[i].theta);
    CHECK(back.components[i].weight == m.components[i].weight);
  }
}
