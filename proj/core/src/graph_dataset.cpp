#include "mgal/graph/dataset.hpp"

#include <string>

#include "mgal/error.hpp"

namespace mgal::graph {

void validate_adjacency(const nd::CsrMatrix& a, double symmetry_tol) {
  if (a.rows() != a.cols()) {
    throw ValidationError("adjacency is not square: " + nd::shape_string(a.rows(), a.cols()));
  }
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& vals = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
      if (vals[p] < 0.0) {
        throw ValidationError("adjacency has negative weight at (" + std::to_string(r) + ", " +
                              std::to_string(ci[p]) + ")");
      }
      if (ci[p] == r && vals[p] != 0.0) {
        throw ValidationError("adjacency has a self-loop at node " + std::to_string(r));
      }
    }
  }
  if (!a.is_symmetric(symmetry_tol)) throw ValidationError("adjacency is not symmetric");
}

void MultiGraphDataset::validate() const {
  const std::size_t n = num_nodes();
  if (views.empty()) throw ValidationError("dataset has no views");
  if (num_classes < 2) throw ValidationError("dataset needs at least 2 classes");
  if (labels.size() != n) {
    throw ValidationError("dataset has " + std::to_string(labels.size()) + " labels for " +
                          std::to_string(n) + " nodes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] >= num_classes) {
      throw ValidationError("label " + std::to_string(labels[i]) + " of node " +
                            std::to_string(i) + " outside [0, " + std::to_string(num_classes) +
                            ")");
    }
  }
  if (!features.all_finite()) throw ValidationError("features contain non-finite values");
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (views[v].rows() != n || views[v].cols() != n) {
      throw ValidationError("view " + std::to_string(v) + " has shape " +
                            nd::shape_string(views[v].rows(), views[v].cols()) + ", expected " +
                            nd::shape_string(n, n));
    }
    validate_adjacency(views[v]);
  }
}

MultiGraphDataset MultiGraphDataset::select_views(std::span<const std::size_t> view_ids) const {
  MultiGraphDataset out;
  out.features = features;
  out.labels = labels;
  out.num_classes = num_classes;
  for (std::size_t v : view_ids) {
    if (v >= views.size()) {
      throw IndexError("view " + std::to_string(v) + " requested from a dataset with " +
                       std::to_string(views.size()) + " views");
    }
    out.views.push_back(views[v]);
  }
  return out;
}

}  // namespace mgal::graph
