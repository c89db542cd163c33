#pragma once

#include <cstddef>
#include <vector>

#include "mgal/harness/experiment.hpp"

namespace mgal::harness {

struct SubsetResult {
  std::vector<std::size_t> views;
  std::vector<double> accuracies;  // one per run
  double mean = 0.0;
};

struct SweepLevel {
  std::size_t size = 0;
  double mean = 0.0;               // over every evaluated subset and run
  std::size_t total_subsets = 0;   // C(m, size)
  bool sampled = false;            // true when total_subsets exceeded the cap
  std::vector<SubsetResult> subsets;
};

struct SweepResult {
  std::vector<SweepLevel> levels;  // sizes 1..m
};

// All size-s subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t m, std::size_t s);

// Accuracy as a function of the number of views. Size-1 subsets are trained
// as single-view GCNs; larger subsets with spec.method (MGAL by default).
// When C(m, s) exceeds spec.sweep_subset_cap, cap subsets are drawn uniformly
// without replacement from a stream seeded by base_seed and s.
SweepResult graph_count_sweep(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec);

}  // namespace mgal::harness
