#include "mgal/graph/split.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgal/error.hpp"

namespace mgal::graph {

std::size_t labeled_count_for_class(std::size_t class_size, double ratio) {
  // the epsilon keeps products like 0.3 * 200 from rounding up to 61
  return static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(class_size) - 1e-9));
}

DataSplit stratified_split(std::span<const std::size_t> labels, std::size_t num_classes,
                           double ratio, double validation_fraction, nd::Rng& rng) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split: label ratio must be in (0, 1)");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0 - ratio)) {
    throw ConfigError("split: validation fraction must be in [0, 1 - ratio)");
  }
  std::vector<std::vector<std::size_t>> by_class(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) throw IndexError("split: label outside class range");
    by_class[labels[i]].push_back(i);
  }

  DataSplit split;
  split.label_ratio = ratio;
  std::vector<std::size_t> pool;
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& members = by_class[c];
    const std::size_t take = labeled_count_for_class(members.size(), ratio);
    if (take < 1) {
      throw ValidationError("split: class " + std::to_string(c) + " has no node to label");
    }
    rng.shuffle(std::span<std::size_t>(members));
    split.labeled.insert(split.labeled.end(), members.begin(),
                         members.begin() + static_cast<std::ptrdiff_t>(take));
    pool.insert(pool.end(), members.begin() + static_cast<std::ptrdiff_t>(take), members.end());
  }

  std::sort(pool.begin(), pool.end());
  const auto val_count = static_cast<std::size_t>(
      std::llround(validation_fraction * static_cast<double>(labels.size())));
  if (val_count > pool.size()) {
    throw ValidationError("split: " + std::to_string(val_count) +
                          " validation nodes requested but only " + std::to_string(pool.size()) +
                          " unlabeled remain");
  }
  rng.shuffle(std::span<std::size_t>(pool));
  split.validation.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(val_count));
  split.test.assign(pool.begin() + static_cast<std::ptrdiff_t>(val_count), pool.end());

  std::sort(split.labeled.begin(), split.labeled.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace mgal::graph
