#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/rng.hpp"

namespace mgal::harness {

struct ProbeConfig {
  std::vector<std::size_t> hidden{64, 16};  // same shape as the discriminator
  std::size_t epochs = 200;
  double learning_rate = 0.01;  // Adam
  double train_fraction = 0.5;  // of nodes; all views of a node fall on one side
};

// Trains a fresh MLP to recover which view each embedding row came from and
// returns its accuracy on held-out nodes. Chance level is 1/m.
double probe_alignment(std::span<const nd::Matrix> embeddings, nd::Rng& rng,
                       const ProbeConfig& config = {});

}  // namespace mgal::harness
