#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "itemsynth/characteristics.hpp"
#include "itemsynth/errors.hpp"
#include "test_util.hpp"

using namespace itemsynth;

TEST_CASE("toy dataset metrics") {
  const CharacteristicsVector v = characteristics(testutil::d4());
  CHECK(v.ds == 4);
  CHECK(v.as == 3);
  CHECK(v.ats == doctest::Approx(2.25));
  CHECK(v.mts == 3);
  CHECK(v.density == doctest::Approx(75.0));
  CHECK(v.mss == doctest::Approx(75.0));
  // item supports 3,3,3 and pair supports 2,2,2 are both uniform over three
  CHECK(v.h1 == doctest::Approx(std::log2(3.0)));
  CHECK(v.h2 == doctest::Approx(std::log2(3.0)));
  CHECK(v.ggd == doctest::Approx(0.0));
}

TEST_CASE("degenerate single-transaction dataset") {
  const CharacteristicsVector v = characteristics(testutil::dataset({{1}}));
  CHECK(v.ds == 1);
  CHECK(v.as == 1);
  CHECK(v.ats == 1);
  CHECK(v.mts == 1);
  CHECK(v.density == doctest::Approx(100.0));
  CHECK(v.mss == doctest::Approx(100.0));
  CHECK(v.h1 == 0.0);
  CHECK(v.h2 == 0.0);  // no pairs
  CHECK(v.ggd == 0.0);

  CHECK_THROWS_AS(characteristics(Dataset{}), Error);
}

TEST_CASE("naive second pass agrees with the computed metrics") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset d = testutil::random_dataset(rng);
    const CharacteristicsVector v = characteristics(d);

    double total = 0, max_size = 0;
    for (const auto& t : d.transactions()) {
      total += t.size();
      max_size = std::max<double>(max_size, t.size());
    }
    CHECK(v.ds == double(d.size()));
    CHECK(v.as == double(d.alphabet().size()));
    CHECK(v.ats == total / d.size());
    CHECK(v.mts == max_size);
    CHECK(v.density == 100.0 * (total / d.size()) / d.alphabet().size());
    CHECK(v.h1 <= std::log2(v.as) + 1e-9);
  }
}

TEST_CASE("entropy and gini edge behavior") {
  // one distinct item -> H1 = 0
  CHECK(characteristics(testutil::dataset({{5}, {5}, {5}})).h1 == 0.0);
  // unequal supports -> positive gini, equal supports -> zero
  const Dataset skew = testutil::dataset({{1}, {1}, {1}, {1, 2}});
  CHECK(characteristics(skew).ggd > 0.0);
  const Dataset flat = testutil::dataset({{1, 2}, {1, 2}});
  CHECK(characteristics(flat).ggd == 0.0);
  CHECK(characteristics(skew).h1 > 0.0);
}

TEST_CASE("aggregate is an element-wise mean") {
  const CharacteristicsVector a = characteristics(testutil::d4());
  const CharacteristicsVector b = characteristics(testutil::dataset({{1}}));

  const CharacteristicsVector only = aggregate({a});
  CHECK(only.ds == a.ds);
  CHECK(only.h2 == a.h2);

  const CharacteristicsVector same = aggregate({a, a});
  CHECK(same.ats == a.ats);
  CHECK(same.mss == a.mss);

  const CharacteristicsVector ab = aggregate({a, b});
  const CharacteristicsVector ba = aggregate({b, a});
  CHECK(ab.ds == doctest::Approx((a.ds + b.ds) / 2));
  CHECK(ab.density == doctest::Approx((a.density + b.density) / 2));
  CHECK(ab.density == ba.density);  // permutation invariant

  CHECK_THROWS_AS(aggregate({}), Error);
}

TEST_CASE("csv table has the fixed header") {
  const std::string csv = characteristics_csv({{"d4", characteristics(testutil::d4())}});
  CHECK(csv.rfind("name,DS,AS,ATS,MTS,Density,GGD,H1,H2,MSS\n", 0) == 0);
  CHECK(csv.find("d4,4,3,2.25,3,75,") != std::string::npos);
}

TEST_CASE("characteristics JSON round trip") {
  const NamedCharacteristics rows{{"d4", characteristics(testutil::d4())},
                                  {"one", characteristics(testutil::dataset({{1}}))}};
  const NamedCharacteristics back = characteristics_from_json(characteristics_to_json(rows));
  REQUIRE(back.size() == 2);
  CHECK(back[0].first == "d4");
  CHECK(back[0].second.h1 == rows[0].second.h1);
  CHECK(back[1].second.density == rows[1].second.density);
}

TEST_CASE("radar normalization: identical vectors coincide, min=max maps to 1") {
  const CharacteristicsVector v = characteristics(testutil::d4());
  const RadarData two = radar_data({{"a", v}, {"b", v}});
  std::istringstream lines(two.csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "metric,min,max,a,b");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.size() - 4) == ",1,1");  // both series pinned at 1.0
  }
  CHECK(rows == 9);
  CHECK(two.svg.find("<svg") != std::string::npos);

  const RadarData one = radar_data({{"solo", v}});
  CHECK(one.csv.find("DS,4,4,1\n") != std::string::npos);
}
