#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mgal/error.hpp"
#include "mgal/graph/dataset.hpp"
#include "mgal/graph/ops.hpp"
#include "mgal/graph/split.hpp"
#include "mgal/graph/synthetic.hpp"
#include "support.hpp"

using namespace mgal;
using mgal::testing::edges;
using mgal::testing::random_graph;

namespace {

// Largest |eigenvalue| of a symmetric matrix via power iteration on s^2.
double spectral_radius(const nd::CsrMatrix& s) {
  nd::Matrix x(s.rows(), 1, 1.0);
  for (std::size_t i = 0; i < s.rows(); ++i) x(i, 0) += 0.01 * static_cast<double>(i % 7);
  double rho2 = 0.0;
  for (int it = 0; it < 2000; ++it) {
    auto y = nd::spmm(s, nd::spmm(s, x));
    double norm = 0.0;
    for (double v : y.values()) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    double xn = 0.0;
    for (double v : x.values()) xn += v * v;
    rho2 = norm / std::sqrt(xn);
    for (double& v : y.values()) v /= norm;
    x = y;
  }
  return std::sqrt(rho2);
}

}  // namespace

TEST(Dataset, FixtureIsValid) { EXPECT_NO_THROW(mgal::testing::six_node_fixture().validate()); }

TEST(Dataset, ValidateRejectsBrokenInvariants) {
  auto ds = mgal::testing::six_node_fixture();
  auto bad = ds;
  bad.views[0] = nd::CsrMatrix::from_triplets(6, 6, {{0, 1, 1.0}});
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.views[0] = nd::CsrMatrix::from_triplets(6, 6, {{2, 2, 1.0}});
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.views[0] = nd::CsrMatrix::from_triplets(6, 6, {{0, 1, -1.0}, {1, 0, -1.0}});
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.labels.pop_back();
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.labels[0] = 2;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.num_classes = 1;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.views.clear();
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.views[1] = nd::CsrMatrix(5, 5);
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Dataset, SelectViewsKeepsOrder) {
  auto ds = mgal::testing::six_node_fixture();
  std::vector<std::size_t> ids{1, 0};
  auto sel = ds.select_views(ids);
  ASSERT_EQ(sel.num_views(), 2u);
  EXPECT_EQ(sel.views[0], ds.views[1]);
  EXPECT_EQ(sel.views[1], ds.views[0]);
  std::vector<std::size_t> bad{2};
  EXPECT_THROW(ds.select_views(bad), IndexError);
}

TEST(Renormalize, IsolatedNode) {
  auto s = graph::renormalize(nd::CsrMatrix(1, 1)).propagation;
  EXPECT_EQ(s.to_dense(), (nd::Matrix{{1.0}}));
}

TEST(Renormalize, TwoNodes) {
  auto s = graph::renormalize(edges(2, {{0, 1}})).propagation;
  EXPECT_EQ(s.to_dense(), (nd::Matrix{{0.5, 0.5}, {0.5, 0.5}}));
}

TEST(Renormalize, ThreeNodePath) {
  auto s = graph::renormalize(edges(3, {{0, 1}, {1, 2}})).propagation;
  EXPECT_NEAR(s.at(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(s.at(0, 1), 1.0 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(s.at(1, 1), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(s.at(0, 2), 0.0);
}

TEST(Renormalize, RejectsInvalidAdjacency) {
  EXPECT_THROW(graph::renormalize(nd::CsrMatrix::from_triplets(2, 2, {{0, 1, 1.0}})),
               ValidationError);
  EXPECT_THROW(graph::renormalize(nd::CsrMatrix(2, 3)), ValidationError);
  EXPECT_THROW(graph::renormalize(nd::CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}})),
               ValidationError);
}

TEST(Renormalize, SymmetricWithSpectrumInUnitInterval) {
  nd::Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng.below(25);
    auto s = graph::renormalize(random_graph(n, rng.uniform(0.05, 0.6), rng)).propagation;
    EXPECT_TRUE(s.is_symmetric(1e-12));
    EXPECT_LE(spectral_radius(s), 1.0 + 1e-9);
  }
}

TEST(Renormalize, RegularGraphPreservesConstants) {
  for (std::size_t n : {3u, 5u, 8u, 13u}) {
    std::vector<std::pair<std::size_t, std::size_t>> ring;
    for (std::size_t i = 0; i < n; ++i) ring.push_back({i, (i + 1) % n});
    auto s = graph::renormalize(edges(n, ring)).propagation;
    auto y = nd::spmm(s, nd::Matrix(n, 1, 1.0));
    for (double v : y.values()) EXPECT_NEAR(v, 1.0, 1e-15);
  }
}

TEST(AverageGraphs, Examples) {
  auto a = edges(2, {{0, 1}});
  std::vector<nd::CsrMatrix> same{a, a, a};
  EXPECT_EQ(graph::average_graphs(same).to_dense(), a.to_dense());

  std::vector<nd::CsrMatrix> with_empty{a, nd::CsrMatrix(2, 2)};
  EXPECT_EQ(graph::average_graphs(with_empty).to_dense(), (nd::Matrix{{0, 0.5}, {0.5, 0}}));

  std::vector<nd::CsrMatrix> disjoint{edges(4, {{0, 1}}), edges(4, {{1, 2}}), edges(4, {{2, 3}})};
  auto avg = graph::average_graphs(disjoint);
  EXPECT_EQ(avg.nnz(), 6u);
  for (double v : avg.values()) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(AverageGraphs, OrderDoesNotMatter) {
  nd::Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<nd::CsrMatrix> views;
    for (int v = 0; v < 4; ++v) views.push_back(random_graph(9, 0.3, rng));
    auto base = graph::average_graphs(views).to_dense();
    std::vector<nd::CsrMatrix> shuffled = views;
    rng.shuffle(std::span(shuffled));
    EXPECT_LT(nd::max_abs_diff(graph::average_graphs(shuffled).to_dense(), base), 1e-15);
    EXPECT_NO_THROW(graph::validate_adjacency(graph::average_graphs(views)));
  }
}

TEST(AverageGraphs, ShapeMismatchThrows) {
  std::vector<nd::CsrMatrix> views{nd::CsrMatrix(2, 2), nd::CsrMatrix(3, 3)};
  EXPECT_THROW(graph::average_graphs(views), DimensionError);
}

TEST(Knn, TwoPoints) {
  auto g = graph::knn_graph(nd::Matrix{{0.0}, {1.0}}, 1, graph::KnnMetric::kEuclidean);
  EXPECT_EQ(g.to_dense(), (nd::Matrix{{0, 1}, {1, 0}}));
}

TEST(Knn, CollinearPoints) {
  auto g = graph::knn_graph(nd::Matrix{{0.0}, {1.0}, {10.0}}, 1, graph::KnnMetric::kEuclidean);
  EXPECT_EQ(g.to_dense(), (nd::Matrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));
}

TEST(Knn, TiesGoToLowerIndex) {
  nd::Matrix pts{{0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  auto g = graph::knn_graph(pts, 1, graph::KnnMetric::kEuclidean);
  // node 0 is equidistant from 1, 2, 3 and picks 1; 3 picks 1 among its duplicates
  EXPECT_EQ(g.at(0, 1), 1.0);
  EXPECT_EQ(g.at(0, 2), 0.0);
  EXPECT_EQ(g.at(3, 1), 1.0);
  EXPECT_EQ(g.at(2, 1), 1.0);
}

TEST(Knn, SymmetricWithMinimumDegree) {
  nd::Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + rng.below(30);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(n - 1, 5));
    auto pts = mgal::testing::random_matrix(n, 3, rng);
    for (auto metric : {graph::KnnMetric::kCosine, graph::KnnMetric::kEuclidean}) {
      auto g = graph::knn_graph(pts, k, metric);
      EXPECT_NO_THROW(graph::validate_adjacency(g));
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(g.row_ptr()[i + 1] - g.row_ptr()[i], k);
        EXPECT_EQ(g.at(i, i), 0.0);
      }
    }
  }
}

TEST(Knn, RejectsBadK) {
  nd::Matrix pts{{0.0}, {1.0}};
  EXPECT_THROW(graph::knn_graph(pts, 2), ValidationError);
  EXPECT_THROW(graph::knn_graph(pts, 0), ValidationError);
  EXPECT_EQ(graph::parse_knn_metric("cosine"), graph::KnnMetric::kCosine);
  EXPECT_THROW(graph::parse_knn_metric("manhattan"), ConfigError);
}

TEST(Synthetic, CliquesWhenIntraIsOne) {
  graph::SbmSpec spec;
  spec.block_sizes = {4, 3};
  spec.views = {graph::SbmView{1.0, 0.0, {{0, 1}}}};
  auto ds = graph::synth_multiview(spec);
  auto a = ds.views[0].to_dense();
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      const bool same = (i < 4) == (j < 4);
      EXPECT_EQ(a(i, j), (same && i != j) ? 1.0 : 0.0) << i << "," << j;
    }
}

TEST(Synthetic, ZeroNoiseGivesClassMeans) {
  auto spec = graph::synthetic_preset("small", 3);
  spec.feature_noise = 0.0;
  auto ds = graph::synth_multiview(spec);
  for (std::size_t i = 0; i < ds.num_nodes(); ++i)
    for (std::size_t j = 0; j < ds.feature_dim(); ++j)
      EXPECT_EQ(ds.features(i, j), j == ds.labels[i] ? 1.0 : 0.0);
}

TEST(Synthetic, DefaultPresetShapeAndDeterminism) {
  auto a = graph::synth_multiview(graph::synthetic_preset("default", 5));
  auto b = graph::synth_multiview(graph::synthetic_preset("default", 5));
  auto c = graph::synth_multiview(graph::synthetic_preset("default", 6));
  EXPECT_EQ(a.num_nodes(), 400u);
  EXPECT_EQ(a.num_views(), 3u);
  EXPECT_EQ(a.num_classes, 4u);
  EXPECT_NO_THROW(a.validate());
  EXPECT_EQ(a.features, b.features);
  EXPECT_EQ(a.views, b.views);
  EXPECT_FALSE(a.views == c.views);
  EXPECT_THROW(graph::synthetic_preset("huge", 0), ConfigError);
}

// A view that does not separate a class pair should link the pair about as
// often as it links within each class.
TEST(Synthetic, UninformativePairsLookAlike) {
  auto ds = graph::synth_multiview(graph::synthetic_preset("default", 2));
  auto count = [&](std::size_t v, std::size_t ca, std::size_t cb) {
    double e = 0;
    const auto& a = ds.views[v];
    for (std::size_t i = 0; i < ds.num_nodes(); ++i)
      for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p)
        if (ds.labels[i] == ca && ds.labels[a.col_idx()[p]] == cb) e += 1;
    return e;
  };
  // view 0 separates classes 0 and 1 but not 2 and 3
  EXPECT_LT(count(0, 0, 1), 0.2 * count(0, 0, 0));
  EXPECT_GT(count(0, 2, 3), 0.6 * count(0, 2, 2));
}

TEST(Split, OneLabelPerClass) {
  std::vector<std::size_t> labels(100);
  for (std::size_t i = 0; i < 100; ++i) labels[i] = i % 10;
  nd::Rng rng(0);
  auto s = graph::stratified_split(labels, 10, 0.1, 0.0, rng);
  EXPECT_EQ(s.labeled.size(), 10u);
  EXPECT_EQ(s.validation.size(), 0u);
  EXPECT_EQ(s.test.size(), 90u);
  std::set<std::size_t> classes;
  for (auto i : s.labeled) classes.insert(labels[i]);
  EXPECT_EQ(classes.size(), 10u);
}

TEST(Split, PaperArithmetic) {
  std::vector<std::size_t> labels(2000);
  for (std::size_t i = 0; i < 2000; ++i) labels[i] = i % 4;
  nd::Rng rng(1);
  auto s = graph::stratified_split(labels, 4, 0.3, 0.05, rng);
  EXPECT_EQ(s.labeled.size(), 600u);
  EXPECT_EQ(s.validation.size(), 100u);
  EXPECT_EQ(s.test.size(), 1300u);
}

TEST(Split, SeedsChangeIndicesNotCounts) {
  std::vector<std::size_t> labels(60);
  for (std::size_t i = 0; i < 60; ++i) labels[i] = i / 20;
  nd::Rng r1(1), r2(2);
  auto a = graph::stratified_split(labels, 3, 0.2, 0.1, r1);
  auto b = graph::stratified_split(labels, 3, 0.2, 0.1, r2);
  EXPECT_NE(a.labeled, b.labeled);
  EXPECT_EQ(a.labeled.size(), b.labeled.size());
  EXPECT_EQ(a.validation.size(), b.validation.size());
}

TEST(Split, PartitionWithCeilingCounts) {
  nd::Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t c = 2 + rng.below(5);
    std::vector<std::size_t> labels;
    std::vector<std::size_t> sizes(c);
    for (std::size_t k = 0; k < c; ++k) {
      sizes[k] = 3 + rng.below(40);
      labels.insert(labels.end(), sizes[k], k);
    }
    rng.shuffle(std::span(labels));
    const double ratio = rng.uniform(0.05, 0.5);
    const double val = rng.uniform(0.0, 0.2);
    auto s = graph::stratified_split(labels, c, ratio, val, rng);

    std::vector<int> seen(labels.size(), 0);
    for (const auto* set : {&s.labeled, &s.validation, &s.test}) {
      EXPECT_TRUE(std::is_sorted(set->begin(), set->end()));
      for (auto i : *set) ++seen[i];
    }
    for (int x : seen) EXPECT_EQ(x, 1);
    std::vector<std::size_t> per_class(c, 0);
    for (auto i : s.labeled) ++per_class[labels[i]];
    for (std::size_t k = 0; k < c; ++k) {
      EXPECT_EQ(per_class[k],
                static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(sizes[k]) - 1e-9)));
    }
    EXPECT_EQ(s.validation.size(),
              static_cast<std::size_t>(std::llround(val * static_cast<double>(labels.size()))));
  }
}

TEST(Split, Errors) {
  std::vector<std::size_t> labels{0, 0, 1, 1};
  nd::Rng rng(0);
  EXPECT_THROW(graph::stratified_split(labels, 2, 0.0, 0.0, rng), ConfigError);
  EXPECT_THROW(graph::stratified_split(labels, 2, 1.5, 0.0, rng), ConfigError);
  EXPECT_THROW(graph::stratified_split(labels, 3, 0.5, 0.0, rng), ValidationError);
  EXPECT_THROW(graph::stratified_split(labels, 2, 0.5, 0.9, rng), ConfigError);
}
