#include "doctest.h"

#include <map>

#include "itemsynth/errors.hpp"
#include "itemsynth/fim.hpp"
#include "test_util.hpp"

using namespace itemsynth;

namespace {

std::map<std::vector<ItemId>, std::uint32_t> as_map(const FrequentItemsetSet& fi) {
  std::map<std::vector<ItemId>, std::uint32_t> m;
  for (const auto& x : fi.itemsets) m[x.items.items()] = x.support;
  return m;
}

}  // namespace

TEST_CASE("min_support_count uses ceil and survives decimal fractions") {
  CHECK(min_support_count(0.5, 4) == 2);
  CHECK(min_support_count(0.25, 4) == 1);
  CHECK(min_support_count(1.0, 4) == 4);
  CHECK(min_support_count(0.5, 377) == 189);  // 188.5 rounds up
  CHECK(min_support_count(0.3, 10) == 3);     // 0.3*10 must not become 4
  CHECK(min_support_count(0.1, 3) == 1);
  CHECK_THROWS_AS(min_support_count(0.0, 4), Error);
  CHECK_THROWS_AS(min_support_count(1.5, 4), Error);
}

TEST_CASE("mine_frequent on the toy dataset") {
  const Dataset d4 = testutil::d4();

  const FrequentItemsetSet half = mine_frequent(d4, 0.5);
  const std::map<std::vector<ItemId>, std::uint32_t> expected{
      {{1}, 3}, {{2}, 3}, {{3}, 3}, {{1, 2}, 2}, {{1, 3}, 2}, {{2, 3}, 2}};
  CHECK(as_map(half) == expected);
  CHECK(half.dataset_size == 4);

  CHECK(mine_frequent(d4, 1.0).itemsets.empty());
  CHECK(mine_frequent(d4, 0.25).itemsets.size() == 7);
}

TEST_CASE("canonical ordering: size ascending then lexicographic") {
  const FrequentItemsetSet fi = mine_frequent(testutil::d4(), 0.25);
  for (std::size_t i = 1; i < fi.itemsets.size(); ++i) {
    CHECK(canonical_less(fi.itemsets[i - 1].items, fi.itemsets[i].items));
  }
}

TEST_CASE("brute force oracle: toy cases and guard") {
  const Dataset d4 = testutil::d4();
  for (double minsup : {0.25, 0.5, 0.75, 1.0}) {
    CHECK(as_map(brute_force_frequent(d4, minsup)) == as_map(mine_frequent(d4, minsup)));
  }

  const Dataset single = testutil::dataset({{1}});
  const auto fi = brute_force_frequent(single, 1.0);
  REQUIRE(fi.itemsets.size() == 1);
  CHECK(fi.itemsets[0].support == 1);

  std::vector<ItemId> wide;
  for (ItemId i = 0; i < 21; ++i) wide.push_back(i);
  const Dataset big(std::vector<Itemset>{Itemset::from_unsorted(wide)});
  CHECK_THROWS_AS(brute_force_frequent(big, 0.5), Error);
}

TEST_CASE("oracle equivalence on random datasets") {
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const Dataset d = testutil::random_dataset(rng, 12, 64);
    for (int level = 1; level <= 10; ++level) {
      const double minsup = level / 10.0;
      CHECK(as_map(mine_frequent(d, minsup)) == as_map(brute_force_frequent(d, minsup)));
    }
  }
}

TEST_CASE("downward closure and monotonicity in minsup") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset d = testutil::random_dataset(rng, 10, 40);

    const FrequentItemsetSet fi = mine_frequent(d, 0.3);
    const auto lookup = as_map(fi);
    for (const auto& x : fi.itemsets) {
      const auto& ids = x.items.items();
      if (ids.size() < 2) continue;
      for (std::size_t skip = 0; skip < ids.size(); ++skip) {
        std::vector<ItemId> sub;
        for (std::size_t i = 0; i < ids.size(); ++i) {
          if (i != skip) sub.push_back(ids[i]);
        }
        REQUIRE(lookup.count(sub));
        CHECK(lookup.at(sub) >= x.support);
      }
    }

    std::size_t prev = mine_frequent(d, 0.1).itemsets.size();
    for (int level = 2; level <= 10; ++level) {
      const std::size_t cur = mine_frequent(d, level / 10.0).itemsets.size();
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("JSON round trip preserves itemsets and metadata") {
  const FrequentItemsetSet fi = mine_frequent(testutil::d4(), 0.5);
  const FrequentItemsetSet back = frequent_from_json(frequent_to_json(fi));
  CHECK(back.minsup == fi.minsup);
  CHECK(back.dataset_size == fi.dataset_size);
  CHECK(as_map(back) == as_map(fi));
}

TEST_CASE("mining an empty dataset is a usage error") {
  const Dataset empty;
  CHECK_THROWS_AS(mine_frequent(empty, 0.5), Error);
}
