#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "validus/value.hpp"

namespace validus {

/// Identifies one observed value: attribute `variable` of unit `unit`, a unit
/// of type `table`, observed at occasion `time`. An absent time stands for
/// the single occasion of a table without a time dimension.
struct Key {
  std::string table;
  std::optional<std::string> time;
  std::string unit;
  std::string variable;

  friend auto operator<=>(const Key &, const Key &) = default;
  friend bool operator==(const Key &, const Key &) = default;
};

std::string to_string(const Key &key);

/// Orders identifiers so that numeric ids sort by value ("2" < "10") and
/// precede non-numeric ids, which sort lexicographically.
bool id_less(const std::string &a, const std::string &b);

struct DataPoint {
  Key key;
  Value value;

  friend bool operator==(const DataPoint &, const DataPoint &) = default;
};

/// A total assignment of values to a finite key set. Immutable once built.
class Dataset {
public:
  Dataset() = default;

  const std::map<Key, Value> &points() const noexcept { return points_; }
  std::set<Key> key_set() const;
  std::vector<DataPoint> to_points() const;

  bool contains(const Key &key) const { return points_.contains(key); }
  std::size_t size() const noexcept { return points_.size(); }

  /// Value bound to `key`; throws MissingKey for keys outside the key set.
  const Value &get_value(const Key &key) const;

  friend bool operator==(const Dataset &, const Dataset &) = default;

private:
  friend Dataset build_dataset(std::span<const DataPoint>, const std::optional<std::set<Key>> &);
  std::map<Key, Value> points_;
};

/// Builds a dataset in which every key occurs exactly once. When
/// `declared_keys` is given it becomes the key set and declared keys without
/// a point are bound to NA.
Dataset build_dataset(std::span<const DataPoint> points,
                      const std::optional<std::set<Key>> &declared_keys = std::nullopt);

inline const Value &get_value(const Dataset &dataset, const Key &key) {
  return dataset.get_value(key);
}

} // namespace validus
