#include "itemsynth/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <string>

#include "itemsynth/errors.hpp"

namespace itemsynth {

Itemset Itemset::from_unsorted(std::vector<ItemId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Itemset s;
  s.items_ = std::move(ids);
  return s;
}

Itemset Itemset::from_sorted(std::vector<ItemId> ids) {
  Itemset s;
  s.items_ = std::move(ids);
  return s;
}

bool Itemset::contains(ItemId id) const {
  return std::binary_search(items_.begin(), items_.end(), id);
}

bool Itemset::contains_all(const Itemset& sub) const {
  if (sub.items_.size() > items_.size()) return false;
  auto it = items_.begin();
  for (ItemId id : sub.items_) {
    it = std::lower_bound(it, items_.end(), id);
    if (it == items_.end() || *it != id) return false;
    ++it;
  }
  return true;
}

std::size_t Itemset::intersection_size(const Itemset& other) const {
  std::size_t count = 0;
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

Itemset set_union(const Itemset& a, const Itemset& b) {
  std::vector<ItemId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Itemset::from_sorted(std::move(out));
}

Itemset set_difference(const Itemset& a, const Itemset& b) {
  std::vector<ItemId> out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Itemset::from_sorted(std::move(out));
}

bool lex_less(const Itemset& a, const Itemset& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool canonical_less(const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

Dataset::Dataset(std::vector<Itemset> transactions, std::string name)
    : transactions_(std::move(transactions)), name_(std::move(name)) {
  std::vector<ItemId> all;
  for (const auto& t : transactions_) all.insert(all.end(), t.begin(), t.end());
  alphabet_ = Itemset::from_unsorted(std::move(all));
}

std::size_t support(const Dataset& d, const Itemset& x) {
  std::size_t count = 0;
  for (const auto& t : d.transactions()) {
    if (t.contains_all(x)) ++count;
  }
  return count;
}

Dataset load_dataset(std::istream& in, const DatasetReadOptions& opts) {
  std::vector<Itemset> transactions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<ItemId> ids;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p >= end) break;
      const char* tok = p;
      while (p < end && *p != ' ' && *p != '\t') ++p;
      ItemId value = 0;
      const auto [ptr, ec] = std::from_chars(tok, p, value);
      if (ec != std::errc{} || ptr != p) {
        throw Error(ErrorCode::io, "parse error at line " + std::to_string(line_no) +
                                       ": invalid item id '" + std::string(tok, p) + "'");
      }
      ids.push_back(value);
    }

    if (ids.empty()) {
      if (opts.allow_empty) transactions.emplace_back();
      continue;
    }
    transactions.push_back(Itemset::from_unsorted(std::move(ids)));
  }
  if (transactions.empty()) throw Error(ErrorCode::io, "empty dataset");
  return Dataset(std::move(transactions));
}

namespace {

std::map<ItemId, std::string> load_item_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open dictionary file: " + path.string());
  std::map<ItemId, std::string> labels;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::io, path.filename().string() + " line " + std::to_string(line_no) +
                                     ": expected id<TAB>label");
    }
    ItemId id = 0;
    const char* b = line.data();
    const auto [ptr, ec] = std::from_chars(b, b + tab, id);
    if (ec != std::errc{} || ptr != b + tab) {
      throw Error(ErrorCode::io, path.filename().string() + " line " + std::to_string(line_no) +
                                     ": invalid item id");
    }
    const std::string label = line.substr(tab + 1);
    if (labels.count(id) || !seen.insert(label).second) {
      throw Error(ErrorCode::io, path.filename().string() + " line " + std::to_string(line_no) +
                                     ": dictionary must map ids and labels one-to-one");
    }
    labels[id] = label;
  }
  return labels;
}

}  // namespace

Dataset load_dataset_file(const std::filesystem::path& path, const DatasetReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open input file: " + path.string());
  Dataset d = load_dataset(in, opts);
  d.set_name(path.stem().string());

  std::filesystem::path dict = path;
  dict.replace_extension(".items");
  if (std::filesystem::exists(dict)) d.set_labels(load_item_labels(dict));
  return d;
}

void save_dataset(const Dataset& d, std::ostream& out, const DatasetWriteOptions& opts) {
  for (const auto& t : d.transactions()) {
    if (t.empty() && !opts.allow_empty) {
      throw Error(ErrorCode::io, "refusing to write empty transaction (allow_empty not set)");
    }
    bool first = true;
    for (ItemId id : t) {
      if (!first) out << ' ';
      out << id;
      first = false;
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "write failure");
}

void save_dataset_file(const Dataset& d, const std::filesystem::path& path,
                       const DatasetWriteOptions& opts) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF on every platform
  if (!out) throw Error(ErrorCode::io, "cannot open output file: " + path.string());
  save_dataset(d, out, opts);
  out.close();
  if (!out) throw Error(ErrorCode::io, "write failure: " + path.string());
}

}  // namespace itemsynth
