#include "doctest.h"

#include <fstream>
#include <sstream>

#include "itemsynth/dataset.hpp"
#include "itemsynth/errors.hpp"
#include "test_util.hpp"

using namespace itemsynth;

TEST_CASE("load: one transaction per nonempty line, duplicates collapsed") {
  std::istringstream in("1 2\n1 2 3\n1 3\n2 3");
  const Dataset d = load_dataset(in);
  REQUIRE(d.size() == 4);
  CHECK(d.alphabet() == testutil::items({1, 2, 3}));
  CHECK(d.transaction(0) == testutil::items({1, 2}));
  CHECK(d.transaction(3) == testutil::items({2, 3}));

  std::istringstream dup("5 5 7");
  const Dataset d2 = load_dataset(dup);
  REQUIRE(d2.size() == 1);
  CHECK(d2.transaction(0) == testutil::items({5, 7}));
}

TEST_CASE("load: empty input and bad tokens are rejected") {
  std::istringstream empty("");
  CHECK_THROWS_WITH_AS(load_dataset(empty), "empty dataset", Error);

  std::istringstream bad("1 2\n3 x 4\n");
  try {
    load_dataset(bad);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(e.code() == ErrorCode::io);
  }

  std::istringstream negative("1 -2\n");
  CHECK_THROWS_AS(load_dataset(negative), Error);
}

TEST_CASE("load: CRLF and blank-line policy") {
  std::istringstream crlf("1 2\r\n3\r\n");
  const Dataset d = load_dataset(crlf);
  REQUIRE(d.size() == 2);
  CHECK(d.transaction(1) == testutil::items({3}));

  std::istringstream blank("1\n\n2\n");
  CHECK(load_dataset(blank).size() == 2);  // blank line dropped by default

  std::istringstream blank2("1\n\n2\n");
  const Dataset kept = load_dataset(blank2, {.allow_empty = true});
  REQUIRE(kept.size() == 3);
  CHECK(kept.transaction(1).empty());
}

TEST_CASE("save: format and empty-transaction policy") {
  std::ostringstream out;
  save_dataset(testutil::dataset({{1, 2}, {3}}), out);
  CHECK(out.str() == "1 2\n3\n");

  Dataset with_empty({Itemset{}, testutil::items({1})});
  std::ostringstream sink;
  CHECK_THROWS_AS(save_dataset(with_empty, sink), Error);
  std::ostringstream sink2;
  save_dataset(with_empty, sink2, {.allow_empty = true});
  CHECK(sink2.str() == "\n1\n");
}

TEST_CASE("round-trip: load(save(d)) reproduces transactions and alphabet") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset d = testutil::random_dataset(rng);
    std::ostringstream out;
    save_dataset(d, out);
    std::istringstream in(out.str());
    const Dataset back = load_dataset(in);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(back.transaction(i) == d.transaction(i));
    CHECK(back.alphabet() == d.alphabet());
  }
}

TEST_CASE("support on the toy dataset") {
  const Dataset d4 = testutil::d4();
  CHECK(support(d4, testutil::items({1})) == 3);
  CHECK(support(d4, testutil::items({1, 2, 3})) == 1);
  CHECK(support(d4, Itemset{}) == 4);  // empty set is contained everywhere
}

TEST_CASE("support: anti-monotone, bounded, alphabet closure") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = testutil::random_dataset(rng);

    for (int probe = 0; probe < 20; ++probe) {
      std::vector<ItemId> y_ids;
      for (ItemId i : d.alphabet()) {
        if (rng.bernoulli(0.3)) y_ids.push_back(i);
      }
      const Itemset y = Itemset::from_unsorted(y_ids);
      std::vector<ItemId> x_ids;
      for (ItemId i : y) {
        if (rng.bernoulli(0.5)) x_ids.push_back(i);
      }
      const Itemset x = Itemset::from_unsorted(x_ids);  // x ⊆ y
      CHECK(support(d, x) >= support(d, y));
      CHECK(support(d, y) <= d.size());
    }

    for (ItemId i : d.alphabet()) CHECK(support(d, Itemset::from_sorted({i})) >= 1);
  }
}

TEST_CASE("sidecar dictionary: loads labels, rejects non-injective maps") {
  testutil::TempDir tmp("dataset_dict");
  const auto dat = tmp.path / "toy.dat";
  {
    std::ofstream out(dat);
    out << "1 2\n2 3\n";
  }
  {
    std::ofstream out(tmp.path / "toy.items");
    out << "1\tsphagnum\n2\tdrosera\n3\tcalluna\n";
  }
  const Dataset d = load_dataset_file(dat);
  CHECK(d.name() == "toy");
  REQUIRE(d.labels().size() == 3);
  CHECK(d.labels().at(2) == "drosera");

  {
    std::ofstream out(tmp.path / "toy.items");
    out << "1\tsame\n2\tsame\n";
  }
  CHECK_THROWS_AS(load_dataset_file(dat), Error);
}

TEST_CASE("missing file maps to an I/O error") {
  try {
    load_dataset_file("/nonexistent/q.dat");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}
