#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "mgal/graph/dataset.hpp"

namespace mgal::graph {

// Edge probabilities of one stochastic-block-model view. A class pair listed
// in `informative_pairs` connects with probability `inter`; every other pair
// connects with `intra`, so the view cannot tell those classes apart.
struct SbmView {
  double intra = 0.1;
  double inter = 0.01;
  std::vector<std::pair<std::size_t, std::size_t>> informative_pairs;
};

struct SbmSpec {
  std::vector<std::size_t> block_sizes;  // one block per class
  std::vector<SbmView> views;
  double feature_noise = 1.0;
  std::uint64_t seed = 0;

  std::size_t num_nodes() const;
  void validate() const;
};

// Features are one-hot class indicators plus N(0, feature_noise^2) noise.
// Nodes are numbered block by block.
MultiGraphDataset synth_multiview(const SbmSpec& spec);

// Named presets. "default": 4 classes x 100 nodes, 3 complementary views.
// "small": 3 classes x 20 nodes, 2 complementary views (fast fixtures).
SbmSpec synthetic_preset(std::string_view name, std::uint64_t seed);

}  // namespace mgal::graph
