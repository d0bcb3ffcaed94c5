#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace itemsynth {

using ItemId = std::uint32_t;

/// A set of items kept strictly ascending, so subset and merge operations are
/// linear scans and equality is plain vector equality.
class Itemset {
 public:
  Itemset() = default;

  static Itemset from_unsorted(std::vector<ItemId> ids);
  static Itemset from_sorted(std::vector<ItemId> ids);  // trusts the caller

  const std::vector<ItemId>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  bool contains(ItemId id) const;
  bool contains_all(const Itemset& sub) const;  // sub ⊆ this
  std::size_t intersection_size(const Itemset& other) const;

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool operator==(const Itemset&) const = default;

 private:
  std::vector<ItemId> items_;
};

Itemset set_union(const Itemset& a, const Itemset& b);
Itemset set_difference(const Itemset& a, const Itemset& b);

bool lex_less(const Itemset& a, const Itemset& b);
// Size-ascending, then lexicographic: the order every canonical result uses.
bool canonical_less(const Itemset& a, const Itemset& b);

/// Immutable once constructed; safe to share read-only across workers.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Itemset> transactions, std::string name = {});

  const std::vector<Itemset>& transactions() const noexcept { return transactions_; }
  const Itemset& transaction(std::size_t i) const { return transactions_[i]; }
  std::size_t size() const noexcept { return transactions_.size(); }

  /// Union of all transaction items.
  const Itemset& alphabet() const noexcept { return alphabet_; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Optional id -> label dictionary from a `.items` sidecar.
  const std::map<ItemId, std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::map<ItemId, std::string> labels) { labels_ = std::move(labels); }

 private:
  std::vector<Itemset> transactions_;
  Itemset alphabet_;
  std::string name_;
  std::map<ItemId, std::string> labels_;
};

/// Number of transactions containing x; support of the empty set is |d|.
std::size_t support(const Dataset& d, const Itemset& x);

struct DatasetReadOptions {
  // When false, blank lines are dropped; when true they become empty
  // transactions.
  bool allow_empty = false;
};

struct DatasetWriteOptions {
  // Empty transactions are refused on write unless set.
  bool allow_empty = false;
};

// FIMI-style `.dat`: one transaction per line, whitespace-separated
// non-negative integer ids. Duplicates within a line collapse. LF written,
// LF/CRLF accepted.
Dataset load_dataset(std::istream& in, const DatasetReadOptions& opts = {});
Dataset load_dataset_file(const std::filesystem::path& path, const DatasetReadOptions& opts = {});
void save_dataset(const Dataset& d, std::ostream& out, const DatasetWriteOptions& opts = {});
void save_dataset_file(const Dataset& d, const std::filesystem::path& path,
                       const DatasetWriteOptions& opts = {});

}  // namespace itemsynth
