#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/sparse.hpp"

namespace mgal::graph {

// One node set with shared features and several edge structures ("views").
struct MultiGraphDataset {
  nd::Matrix features;               // n x d
  std::vector<nd::CsrMatrix> views;  // m adjacency matrices, n x n
  std::vector<std::size_t> labels;   // class id per node, in [0, num_classes)
  std::size_t num_classes = 0;

  std::size_t num_nodes() const noexcept { return features.rows(); }
  std::size_t feature_dim() const noexcept { return features.cols(); }
  std::size_t num_views() const noexcept { return views.size(); }

  // Throws ValidationError on the first violated invariant: square symmetric
  // nonnegative adjacency with zero diagonal, a label for every node, c >= 2,
  // m >= 1.
  void validate() const;

  // Dataset restricted to the listed views, in the order given.
  MultiGraphDataset select_views(std::span<const std::size_t> view_ids) const;
};

// Checks a single adjacency matrix against the dataset invariants.
void validate_adjacency(const nd::CsrMatrix& a, double symmetry_tol = 1e-12);

}  // namespace mgal::graph
