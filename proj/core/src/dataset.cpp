#include "validus/dataset.hpp"

#include "validus/error.hpp"

namespace validus {

std::string to_string(const Key &key) {
  std::string out = "(" + key.table + ", ";
  if (key.time)
    out += *key.time + ", ";
  out += key.unit + ", " + key.variable + ")";
  return out;
}

bool id_less(const std::string &a, const std::string &b) {
  const auto na = parse_decimal(a);
  const auto nb = parse_decimal(b);
  if (na && nb) {
    if (*na != *nb)
      return *na < *nb;
    return a < b;
  }
  if (na || nb)
    return na.has_value();
  return a < b;
}

std::set<Key> Dataset::key_set() const {
  std::set<Key> keys;
  for (const auto &[key, value] : points_)
    keys.insert(keys.end(), key);
  return keys;
}

std::vector<DataPoint> Dataset::to_points() const {
  std::vector<DataPoint> out;
  out.reserve(points_.size());
  for (const auto &[key, value] : points_)
    out.push_back({key, value});
  return out;
}

const Value &Dataset::get_value(const Key &key) const {
  auto it = points_.find(key);
  if (it == points_.end())
    throw MissingKey(to_string(key));
  return it->second;
}

Dataset build_dataset(std::span<const DataPoint> points,
                      const std::optional<std::set<Key>> &declared_keys) {
  Dataset dataset;
  for (const auto &point : points) {
    if (declared_keys && !declared_keys->contains(point.key))
      throw UnknownKey(to_string(point.key));
    if (!dataset.points_.emplace(point.key, point.value).second)
      throw DuplicateKey(to_string(point.key));
  }
  if (declared_keys) {
    for (const auto &key : *declared_keys)
      dataset.points_.try_emplace(key, NA{});
  }
  return dataset;
}

} // namespace validus
