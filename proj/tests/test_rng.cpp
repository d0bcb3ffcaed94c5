#include "doctest.h"

#include <cmath>
#include <vector>

#include "itemsynth/rng.hpp"

using itemsynth::Rng;

TEST_CASE("streams are reproducible and index-separated") {
  Rng a = Rng::stream(42, 7);
  Rng b = Rng::stream(42, 7);
  Rng c = Rng::stream(42, 8);
  bool differs = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    if (va != c.next_u64()) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("below stays in range and covers all residues") {
  Rng rng(123);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto v = rng.below(5);
    REQUIRE(v < 5);
    ++counts[v];
  }
  for (int c : counts) CHECK(c > 800);  // ~1000 expected per bucket
  CHECK(rng.below(1) == 0);
}

TEST_CASE("uniform01 lies in [0,1) and is roughly centered") {
  Rng rng(99);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("categorical_cdf respects weights and skips zero entries") {
  Rng rng(7);
  const std::vector<double> cdf{0.0, 0.25, 0.25, 1.0};  // weights 0, .25, 0, .75
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 20000; ++i) ++counts[rng.categorical_cdf(cdf)];
  CHECK(counts[0] == 0);
  CHECK(counts[2] == 0);
  CHECK(std::abs(counts[1] / 20000.0 - 0.25) < 0.02);
  CHECK(std::abs(counts[3] / 20000.0 - 0.75) < 0.02);
}
