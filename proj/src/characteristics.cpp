#include "itemsynth/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "itemsynth/errors.hpp"
#include "itemsynth/svg.hpp"

namespace itemsynth {

namespace {

double shannon_entropy_bits(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  return h;
}

// Gini coefficient of a non-negative vector, via the sorted formulation.
double gini(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += values[i];
    weighted += static_cast<double>(i + 1) * values[i];
  }
  if (total <= 0.0) return 0.0;
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

CharacteristicsVector characteristics(const Dataset& d) {
  if (d.size() == 0) throw Error(ErrorCode::usage, "cannot characterize an empty dataset");

  CharacteristicsVector v;
  v.ds = static_cast<double>(d.size());
  v.as = static_cast<double>(d.alphabet().size());

  std::size_t total_items = 0;
  std::size_t max_size = 0;
  std::map<ItemId, std::uint32_t> item_support;
  std::unordered_map<std::uint64_t, std::uint32_t> pair_support;
  for (const auto& t : d.transactions()) {
    total_items += t.size();
    max_size = std::max(max_size, t.size());
    const auto& ids = t.items();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ++item_support[ids[i]];
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        ++pair_support[(static_cast<std::uint64_t>(ids[i]) << 32) | ids[j]];
      }
    }
  }

  v.ats = static_cast<double>(total_items) / v.ds;
  v.mts = static_cast<double>(max_size);
  v.density = v.as > 0 ? 100.0 * v.ats / v.as : 0.0;

  std::vector<double> supports;
  supports.reserve(item_support.size());
  double max_support = 0.0;
  for (const auto& [id, count] : item_support) {
    supports.push_back(count);
    max_support = std::max(max_support, static_cast<double>(count));
  }
  v.mss = 100.0 * max_support / v.ds;
  v.h1 = shannon_entropy_bits(supports);
  v.ggd = 100.0 * gini(supports);

  std::vector<double> pair_counts;
  pair_counts.reserve(pair_support.size());
  for (const auto& [key, count] : pair_support) pair_counts.push_back(count);
  v.h2 = shannon_entropy_bits(pair_counts);
  return v;
}

CharacteristicsVector aggregate(const std::vector<CharacteristicsVector>& vs) {
  if (vs.empty()) throw Error(ErrorCode::usage, "cannot aggregate zero vectors");
  CharacteristicsVector mean;
  for (const auto& v : vs) {
    mean.ds += v.ds;
    mean.as += v.as;
    mean.ats += v.ats;
    mean.mts += v.mts;
    mean.density += v.density;
    mean.ggd += v.ggd;
    mean.h1 += v.h1;
    mean.h2 += v.h2;
    mean.mss += v.mss;
  }
  const double n = static_cast<double>(vs.size());
  mean.ds /= n;
  mean.as /= n;
  mean.ats /= n;
  mean.mts /= n;
  mean.density /= n;
  mean.ggd /= n;
  mean.h1 /= n;
  mean.h2 /= n;
  mean.mss /= n;
  return mean;
}

namespace {

std::vector<double> as_array(const CharacteristicsVector& v) {
  return {v.ds, v.as, v.ats, v.mts, v.density, v.ggd, v.h1, v.h2, v.mss};
}

CharacteristicsVector from_array(const std::vector<double>& a) {
  CharacteristicsVector v;
  v.ds = a[0];
  v.as = a[1];
  v.ats = a[2];
  v.mts = a[3];
  v.density = a[4];
  v.ggd = a[5];
  v.h1 = a[6];
  v.h2 = a[7];
  v.mss = a[8];
  return v;
}

}  // namespace

std::string characteristics_csv(const NamedCharacteristics& rows) {
  std::ostringstream out;
  out << "name";
  for (const char* name : kCharacteristicNames) out << ',' << name;
  out << '\n';
  for (const auto& [name, v] : rows) {
    out << name;
    for (double x : as_array(v)) out << ',' << format_number(x);
    out << '\n';
  }
  return out.str();
}

nlohmann::json characteristics_to_json(const NamedCharacteristics& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [name, v] : rows) {
    nlohmann::json row{{"name", name}};
    const auto values = as_array(v);
    for (std::size_t i = 0; i < 9; ++i) row[kCharacteristicNames[i]] = values[i];
    arr.push_back(row);
  }
  return arr;
}

NamedCharacteristics characteristics_from_json(const nlohmann::json& j) {
  NamedCharacteristics rows;
  for (const auto& row : j) {
    std::vector<double> values;
    for (const char* name : kCharacteristicNames) values.push_back(row.at(name).get<double>());
    rows.emplace_back(row.at("name").get<std::string>(), from_array(values));
  }
  return rows;
}

RadarData radar_data(const NamedCharacteristics& rows) {
  if (rows.empty()) throw Error(ErrorCode::usage, "radar chart needs at least one vector");

  std::vector<std::vector<double>> raw;
  raw.reserve(rows.size());
  for (const auto& [name, v] : rows) raw.push_back(as_array(v));

  std::vector<double> lo(9), hi(9);
  for (std::size_t m = 0; m < 9; ++m) {
    lo[m] = hi[m] = raw[0][m];
    for (const auto& r : raw) {
      lo[m] = std::min(lo[m], r[m]);
      hi[m] = std::max(hi[m], r[m]);
    }
  }

  std::vector<std::pair<std::string, std::vector<double>>> normalized;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> vals(9);
    for (std::size_t m = 0; m < 9; ++m) {
      vals[m] = hi[m] > lo[m] ? (raw[i][m] - lo[m]) / (hi[m] - lo[m]) : 1.0;
    }
    normalized.emplace_back(rows[i].first, std::move(vals));
  }

  std::ostringstream csv;
  csv << "metric,min,max";
  for (const auto& [name, vals] : normalized) csv << ',' << name;
  csv << '\n';
  for (std::size_t m = 0; m < 9; ++m) {
    csv << kCharacteristicNames[m] << ',' << format_number(lo[m]) << ',' << format_number(hi[m]);
    for (const auto& [name, vals] : normalized) csv << ',' << format_number(vals[m]);
    csv << '\n';
  }

  RadarData out;
  out.csv = csv.str();
  out.svg = radar_svg(
      std::vector<std::string>(std::begin(kCharacteristicNames), std::end(kCharacteristicNames)),
      normalized);
  return out;
}

}  // namespace itemsynth
