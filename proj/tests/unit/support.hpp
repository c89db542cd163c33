#pragma once

#include <cstddef>
#include <vector>

#include "mgal/graph/dataset.hpp"
#include "mgal/graph/ops.hpp"
#include "mgal/model/networks.hpp"
#include "mgal/model/params.hpp"
#include "mgal/ndcore/gradcheck.hpp"
#include "mgal/training/losses.hpp"
#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/rng.hpp"
#include "mgal/ndcore/sparse.hpp"

namespace mgal::testing {

inline nd::Matrix random_matrix(std::size_t rows, std::size_t cols, nd::Rng& rng,
                                double lo = -1.0, double hi = 1.0) {
  nd::Matrix m(rows, cols);
  for (double& x : m.values()) x = rng.uniform(lo, hi);
  return m;
}

// Symmetric 0/1 adjacency with zero diagonal; each pair present with probability p.
inline nd::CsrMatrix random_graph(std::size_t n, double p, nd::Rng& rng) {
  std::vector<nd::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) {
        t.push_back({i, j, 1.0});
        t.push_back({j, i, 1.0});
      }
    }
  }
  return nd::CsrMatrix::from_triplets(n, n, std::move(t));
}

inline nd::CsrMatrix edges(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> list) {
  std::vector<nd::Triplet> t;
  for (auto [i, j] : list) {
    t.push_back({i, j, 1.0});
    t.push_back({j, i, 1.0});
  }
  return nd::CsrMatrix::from_triplets(n, n, std::move(t));
}

struct GradCase {
  const char* name;
  nd::LossBuilder build;
  std::vector<nd::Matrix> params;
};

// One small loss per tape operation, plus a full GCN layer.
inline std::vector<GradCase> op_gradient_cases() {
  nd::Rng rng(21);
  auto a = random_matrix(4, 3, rng);
  auto b = random_matrix(3, 2, rng);
  auto c = random_matrix(4, 3, rng);
  auto row = random_matrix(1, 3, rng);
  auto pos = random_matrix(4, 3, rng, 0.1, 2.0);
  auto s = nd::CsrMatrix::from_dense(nd::Matrix{
      {0.5, 0.0, 0.25, 0.0}, {0.0, 0.3, 0.0, 0.7}, {0.25, 0.0, 0.0, 0.1}, {0.0, 0.7, 0.1, 0.2}});
  std::vector<std::size_t> idx{2, 0, 2};
  auto weights = random_matrix(4, 3, rng);
  auto w42 = random_matrix(4, 2, rng);
  auto w46 = random_matrix(4, 6, rng);
  auto w33 = random_matrix(3, 3, rng);

  return {
      {"matmul", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::matmul(p[0], p[1]), t.constant(w42)));
       }, {a, b}},
      {"spmm", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::spmm(s, p[0]), t.constant(weights)));
       }, {a}},
      {"relu", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::relu(p[0]), t.constant(weights)));
       }, {a}},
      {"softmax", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::softmax_rows(p[0]), t.constant(weights)));
       }, {a}},
      {"concat", [=](nd::Tape& t, auto p) {
         std::vector<nd::Var> parts{p[0], p[1]};
         return nd::sum(nd::mul(nd::concat_cols(parts), t.constant(w46)));
       }, {a, c}},
      {"row_select", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::row_select(p[0], idx), t.constant(w33)));
       }, {a}},
      {"scale_add_sub", [=](nd::Tape& t, auto p) {
         auto y = nd::sub(nd::add(nd::scale(p[0], 2.5), p[1]), nd::scale(p[1], 0.5));
         return nd::sum(nd::mul(y, t.constant(weights)));
       }, {a, c}},
      {"mul", [=](nd::Tape&, auto p) { return nd::sum(nd::mul(p[0], p[1])); }, {a, c}},
      {"broadcast", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::add_row_broadcast(p[0], p[1]), t.constant(weights)));
       }, {a, row}},
      {"log", [=](nd::Tape& t, auto p) {
         return nd::sum(nd::mul(nd::log_clamped(p[0]), t.constant(weights)));
       }, {pos}},
      {"mean", [=](nd::Tape&, auto p) { return nd::mean(nd::mul(p[0], p[0])); }, {a}},
      {"gcn_layer", [=](nd::Tape& t, auto p) {
         auto h = nd::relu(nd::spmm(s, nd::matmul(p[0], p[1])));
         return nd::sum(nd::mul(nd::softmax_rows(h), t.constant(w42)));
       }, {a, b}},
  };
}

// 6 nodes, 2 views, 2 classes. View 0 links within class, view 1 is a ring.
inline graph::MultiGraphDataset six_node_fixture() {
  graph::MultiGraphDataset ds;
  ds.features = nd::Matrix{{1.0, 0.2, -0.3},  {0.8, -0.1, 0.4}, {0.9, 0.5, 0.1},
                           {-0.2, 1.1, 0.3},  {0.1, 0.7, -0.6}, {-0.4, 0.9, 0.2}};
  ds.views.push_back(edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {2, 3}}));
  ds.views.push_back(edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}));
  ds.labels = {0, 0, 0, 1, 1, 1};
  ds.num_classes = 2;
  return ds;
}

// Full generator objective L_semi + lambda * L_adv over every parameter of a
// fc-head model, flattened as generator weights, discriminator weights,
// discriminator biases, head weights. The graphs must outlive the builder.
struct ComposedObjective {
  std::vector<nd::Matrix> params;
  nd::LossBuilder build;
};

inline ComposedObjective composed_objective(const graph::MultiGraphDataset& ds,
                                            const std::vector<graph::NormalizedGraph>& graphs,
                                            std::vector<std::size_t> labeled, double lambda,
                                            std::uint64_t seed) {
  const model::ModelConfig cfg;
  auto p = model::init_model(ds.feature_dim(), ds.num_views(), ds.num_classes, cfg, seed);
  // nonzero biases so the bias gradients are exercised away from init
  nd::Rng rng(seed + 1);
  for (auto& b : p.discriminator.biases)
    for (double& v : b.values()) v = rng.uniform(-0.1, 0.1);
  ComposedObjective out;
  const std::size_t ng = p.generator.weights.size();
  const std::size_t nd_ = p.discriminator.weights.size();
  for (auto& w : p.generator.weights) out.params.push_back(w);
  for (auto& w : p.discriminator.weights) out.params.push_back(w);
  for (auto& b : p.discriminator.biases) out.params.push_back(b);
  out.params.push_back(p.head.weights[0]);
  out.build = [&ds, &graphs, labeled, lambda, ng, nd_](nd::Tape& t, std::span<const nd::Var> v) {
    model::GeneratorVars gen{{v.begin(), v.begin() + ng}};
    model::DiscriminatorVars disc{{v.begin() + ng, v.begin() + ng + nd_},
                                  {v.begin() + ng + nd_, v.begin() + ng + 2 * nd_}};
    nd::Var x = t.constant(ds.features);
    std::vector<nd::Var> z, d;
    for (const auto& g : graphs) z.push_back(model::generator_forward(x, g, gen));
    for (auto zv : z) d.push_back(model::discriminator_forward(zv, disc));
    nd::Var u = model::head_forward_fc(z, v[ng + 2 * nd_]);
    nd::Var semi = training::semi_loss(u, ds.labels, labeled);
    return nd::add(semi, nd::scale(training::adversarial_loss(d), lambda));
  };
  return out;
}

}  // namespace mgal::testing
