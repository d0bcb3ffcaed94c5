#include "doctest.h"

#include <cmath>

#include "itemsynth/errors.hpp"
#include "itemsynth/fidelity.hpp"
#include "test_util.hpp"

using namespace itemsynth;

namespace {

FrequentItemsetSet fi_of(std::initializer_list<std::initializer_list<ItemId>> sets) {
  FrequentItemsetSet fi;
  for (const auto& s : sets) fi.itemsets.push_back({testutil::items(s), 1});
  return fi;
}

// Rename a subset of the alphabet to fresh ids nobody else uses.
Dataset rename_items(const Dataset& d, Rng& rng, double rate) {
  std::map<ItemId, ItemId> mapping;
  ItemId fresh = 1000000;
  for (ItemId id : d.alphabet()) {
    mapping[id] = rng.bernoulli(rate) ? fresh++ : id;
  }
  std::vector<Itemset> rows;
  for (const auto& t : d.transactions()) {
    std::vector<ItemId> ids;
    for (ItemId id : t) ids.push_back(mapping.at(id));
    rows.push_back(Itemset::from_unsorted(std::move(ids)));
  }
  return Dataset(std::move(rows), d.name() + "_renamed");
}

}  // namespace

TEST_CASE("itemset precision and recall") {
  const Itemset x = testutil::items({1, 2, 3});
  const Itemset y = testutil::items({1, 2, 4});
  CHECK(itemset_precision(x, y) == doctest::Approx(2.0 / 3.0));
  CHECK(itemset_recall(x, y) == doctest::Approx(2.0 / 3.0));
  CHECK(itemset_precision(x, x) == 1.0);
  CHECK(itemset_recall(x, x) == 1.0);
  CHECK(itemset_precision(x, testutil::items({7})) == 0.0);
  CHECK(itemset_precision(x, Itemset{}) == 0.0);  // empty denominator convention
  CHECK(itemset_recall(Itemset{}, y) == 0.0);
}

TEST_CASE("set-level matching") {
  const FrequentItemsetSet ori = fi_of({{1, 2}, {3}});
  const FrequentItemsetSet syn = fi_of({{1, 2}});
  CHECK(set_precision(syn, ori) == doctest::Approx(1.0));
  CHECK(set_recall(syn, ori) == doctest::Approx(0.5));  // {3} unmatched

  CHECK(set_precision(ori, ori) == 1.0);
  CHECK(set_recall(ori, ori) == 1.0);

  const FrequentItemsetSet empty;
  CHECK(set_precision(empty, ori) == 0.0);
  CHECK(set_recall(empty, ori) == 0.0);
  CHECK(set_precision(syn, empty) == 0.0);
  CHECK(set_recall(syn, empty) == 0.0);
}

TEST_CASE("f1 combines precision and recall") {
  CHECK(f1_score(0.5, 0.5) == doctest::Approx(0.5));
  CHECK(f1_score(1.0, 0.0) == 0.0);
  CHECK(f1_score(0.0, 0.0) == 0.0);
}

TEST_CASE("self evaluation is exactly 1, disjoint alphabets exactly 0") {
  const Dataset d4 = testutil::d4();
  const auto grid = default_support_grid();
  REQUIRE(grid.size() == 9);

  const FidelityReport self = pattern_fidelity(d4, d4, grid);
  CHECK(self.f1 == 1.0);
  CHECK(self.precision == 1.0);
  CHECK(self.recall == 1.0);
  // d4 has no itemset at 90% support; that level is flagged, not averaged.
  bool saw_both_empty = false;
  for (const auto& level : self.per_support_level) saw_both_empty |= level.both_empty;
  CHECK(saw_both_empty);
  CHECK(self.per_support_level.size() == 9);

  const Dataset renamed = testutil::dataset({{11, 12}, {11, 12, 13}, {11, 13}, {12, 13}});
  CHECK(pattern_fidelity(d4, renamed, grid).f1 == 0.0);
  CHECK(privacy_score(d4, renamed).f1 == 0.0);
  CHECK(privacy_score(d4, d4).f1 == 1.0);
}

TEST_CASE("privacy on a single mismatched pair") {
  const Dataset ori = testutil::dataset({{1, 2}});
  const Dataset syn = testutil::dataset({{1, 3}});
  const FidelityReport r = privacy_score(ori, syn);
  CHECK(r.precision == doctest::Approx(0.5));
  CHECK(r.recall == doctest::Approx(0.5));
  CHECK(r.f1 == doctest::Approx(0.5));
}

TEST_CASE("empty synthetic transactions are skipped in the privacy precision mean") {
  const Dataset ori = testutil::dataset({{1, 2}});
  Dataset syn({Itemset{}, testutil::items({1, 2})});
  const FidelityReport r = privacy_score(ori, syn);
  CHECK(r.precision == doctest::Approx(1.0));
  CHECK(r.recall == doctest::Approx(1.0));
}

TEST_CASE("renaming items never improves any score") {
  Rng rng(505);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset ori = testutil::random_dataset(rng, 8, 24);
    const Dataset syn = testutil::random_dataset(rng, 8, 24);
    const Dataset corrupted = rename_items(syn, rng, 0.3 + 0.4 * rng.uniform01());

    const auto grid = std::vector<double>{0.2, 0.4, 0.6, 0.8};
    const FidelityReport base = pattern_fidelity(ori, syn, grid);
    const FidelityReport worse = pattern_fidelity(ori, corrupted, grid);
    CHECK(worse.precision <= base.precision + 1e-12);
    CHECK(worse.recall <= base.recall + 1e-12);
    CHECK(worse.f1 <= base.f1 + 1e-12);

    const FidelityReport pbase = privacy_score(ori, syn);
    const FidelityReport pworse = privacy_score(ori, corrupted);
    CHECK(pworse.precision <= pbase.precision + 1e-12);
    CHECK(pworse.recall <= pbase.recall + 1e-12);
    CHECK(pworse.f1 <= pbase.f1 + 1e-12);
  }
}

TEST_CASE("per-level scores are retained for pattern reports") {
  const FidelityReport r = pattern_fidelity(testutil::d4(), testutil::d4(), {0.25, 0.5});
  REQUIRE(r.per_support_level.size() == 2);
  CHECK(r.per_support_level[0].minsup == 0.25);
  CHECK(r.per_support_level[0].precision == 1.0);
  CHECK(r.per_support_level[1].f1 == 1.0);

  const auto j = fidelity_to_json(r);
  CHECK(j.at("kind") == "pattern");
  CHECK(j.at("per_support_level").size() == 2);

  const auto p = fidelity_to_json(privacy_score(testutil::d4(), testutil::d4()));
  CHECK(p.at("kind") == "privacy");
  CHECK_FALSE(p.contains("per_support_level"));
}

TEST_CASE("grid must be nonempty") {
  CHECK_THROWS_AS(pattern_fidelity(testutil::d4(), testutil::d4(), {}), Error);
}
