#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgal/ndcore/rng.hpp"

namespace mgal::graph {

// Disjoint labeled / validation / test index sets covering every node.
struct DataSplit {
  std::vector<std::size_t> labeled;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
  double label_ratio = 0.0;
};

// ceil(ratio * |class|) labeled nodes per class; then round(validation_fraction * n)
// validation nodes drawn class-agnostically from the rest; the remainder is test.
// Index lists are returned sorted.
DataSplit stratified_split(std::span<const std::size_t> labels, std::size_t num_classes,
                           double ratio, double validation_fraction, nd::Rng& rng);

std::size_t labeled_count_for_class(std::size_t class_size, double ratio);

}  // namespace mgal::graph
