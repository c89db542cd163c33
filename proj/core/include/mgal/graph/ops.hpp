#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/sparse.hpp"

namespace mgal::graph {

// Renormalized GCN propagation matrix D^-1/2 (A + I) D^-1/2, with D the row
// sums of A + I.
struct NormalizedGraph {
  nd::CsrMatrix propagation;

  std::size_t num_nodes() const noexcept { return propagation.rows(); }
};

// Rejects non-square, asymmetric, negative or self-looped input.
NormalizedGraph renormalize(const nd::CsrMatrix& adjacency);

// Entry-wise mean of the views; the pattern is the union of input patterns.
nd::CsrMatrix average_graphs(std::span<const nd::CsrMatrix> views);

enum class KnnMetric { kCosine, kEuclidean };

KnnMetric parse_knn_metric(std::string_view name);

// Binary kNN graph, symmetrized by union, zero diagonal. Distance ties go to
// the lower node index.
nd::CsrMatrix knn_graph(const nd::Matrix& points, std::size_t k,
                        KnnMetric metric = KnnMetric::kCosine);

}  // namespace mgal::graph
