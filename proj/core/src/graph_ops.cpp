#include "mgal/graph/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "mgal/error.hpp"
#include "mgal/graph/dataset.hpp"

namespace mgal::graph {

NormalizedGraph renormalize(const nd::CsrMatrix& adjacency) {
  validate_adjacency(adjacency);
  const std::size_t n = adjacency.rows();
  std::vector<double> degree = adjacency.row_sums();
  for (double& d : degree) d += 1.0;

  const auto& rp = adjacency.row_ptr();
  const auto& ci = adjacency.col_idx();
  const auto& vals = adjacency.values();
  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(adjacency.nnz() + n);
  values.reserve(adjacency.nnz() + n);
  for (std::size_t r = 0; r < n; ++r) {
    bool diagonal_done = false;
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
      const std::size_t c = ci[p];
      if (!diagonal_done && c >= r) {
        col_idx.push_back(r);
        values.push_back(1.0 / degree[r]);
        diagonal_done = true;
        // an explicit stored zero on the diagonal is folded into the identity
        if (c == r) continue;
      }
      col_idx.push_back(c);
      values.push_back(vals[p] / std::sqrt(degree[r] * degree[c]));
    }
    if (!diagonal_done) {
      col_idx.push_back(r);
      values.push_back(1.0 / degree[r]);
    }
    row_ptr[r + 1] = col_idx.size();
  }
  return NormalizedGraph{
      nd::CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::move(values))};
}

nd::CsrMatrix average_graphs(std::span<const nd::CsrMatrix> views) {
  if (views.empty()) throw DimensionError("average_graphs: no views");
  const std::size_t rows = views.front().rows();
  const std::size_t cols = views.front().cols();
  std::vector<nd::Triplet> entries;
  for (const auto& v : views) {
    if (v.rows() != rows || v.cols() != cols) {
      throw DimensionError("average_graphs: " + nd::shape_string(v.rows(), v.cols()) + " vs " +
                           nd::shape_string(rows, cols));
    }
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t p = v.row_ptr()[r]; p < v.row_ptr()[r + 1]; ++p)
        entries.push_back({r, v.col_idx()[p], v.values()[p]});
  }
  nd::CsrMatrix summed = nd::CsrMatrix::from_triplets(rows, cols, std::move(entries));
  std::vector<double> values = summed.values();
  const double m = static_cast<double>(views.size());
  for (double& x : values) x /= m;
  return nd::CsrMatrix(rows, cols, summed.row_ptr(), summed.col_idx(), std::move(values));
}

KnnMetric parse_knn_metric(std::string_view name) {
  if (name == "cosine") return KnnMetric::kCosine;
  if (name == "euclidean") return KnnMetric::kEuclidean;
  throw ConfigError("unknown kNN metric '" + std::string(name) + "'");
}

nd::CsrMatrix knn_graph(const nd::Matrix& points, std::size_t k, KnnMetric metric) {
  const std::size_t n = points.rows();
  if (k == 0 || k >= n) {
    throw ValidationError("knn_graph: k = " + std::to_string(k) + " must be in [1, n) with n = " +
                          std::to_string(n));
  }
  std::vector<double> norms(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double x : points.row(i)) s += x * x;
    norms[i] = std::sqrt(s);
  }
  auto distance = [&](std::size_t i, std::size_t j) {
    const auto a = points.row(i);
    const auto b = points.row(j);
    if (metric == KnnMetric::kEuclidean) {
      double s = 0.0;
      for (std::size_t t = 0; t < a.size(); ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
      return s;
    }
    double dot = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) dot += a[t] * b[t];
    const double denom = norms[i] * norms[j];
    return denom > 0.0 ? 1.0 - dot / denom : 1.0;
  };

  std::vector<nd::Triplet> entries;
  entries.reserve(2 * n * k);
  std::vector<std::pair<double, std::size_t>> cand(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) cand[c++] = {distance(i, j), j};
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    for (std::size_t t = 0; t < k; ++t) {
      entries.push_back({i, cand[t].second, 1.0});
      entries.push_back({cand[t].second, i, 1.0});
    }
  }
  nd::CsrMatrix merged = nd::CsrMatrix::from_triplets(n, n, std::move(entries));
  std::vector<double> binary(merged.nnz(), 1.0);
  return nd::CsrMatrix(n, n, merged.row_ptr(), merged.col_idx(), std::move(binary));
}

}  // namespace mgal::graph
