#include <benchmark/benchmark.h>

#include "mgal/graph/ops.hpp"
#include "mgal/graph/split.hpp"
#include "mgal/graph/synthetic.hpp"
#include "mgal/model/params.hpp"
#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/rng.hpp"
#include "mgal/ndcore/sparse.hpp"
#include "mgal/training/optim.hpp"
#include "mgal/training/trainer.hpp"

using namespace mgal;

namespace {

nd::Matrix random_matrix(std::size_t rows, std::size_t cols, nd::Rng& rng) {
  nd::Matrix m(rows, cols);
  for (double& x : m.values()) x = rng.normal();
  return m;
}

const graph::MultiGraphDataset& preset() {
  static const auto ds = graph::synth_multiview(graph::synthetic_preset("default", 1));
  return ds;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  nd::Rng rng(1);
  auto a = random_matrix(n, 64, rng);
  auto b = random_matrix(64, 16, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nd::matmul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * 64 * 16));
}
BENCHMARK(BM_Matmul)->Arg(400)->Arg(4000);

void BM_Spmm(benchmark::State& state) {
  const auto& ds = preset();
  auto s = graph::renormalize(ds.views[0]);
  nd::Rng rng(2);
  auto x = random_matrix(ds.num_nodes(), static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(nd::spmm(s.propagation, x));
  state.counters["nnz"] = static_cast<double>(s.propagation.nnz());
}
BENCHMARK(BM_Spmm)->Arg(16)->Arg(64);

void BM_Renormalize(benchmark::State& state) {
  const auto& ds = preset();
  for (auto _ : state) benchmark::DoNotOptimize(graph::renormalize(ds.views[0]));
}
BENCHMARK(BM_Renormalize);

// One generator step and one discriminator step on the default preset.
void BM_TrainingEpoch(benchmark::State& state) {
  const auto& ds = preset();
  const model::ModelConfig mc;
  training::TrainConfig tc;
  auto data = training::prepare(ds, mc.head);
  nd::Rng split_rng(3);
  auto split = graph::stratified_split(ds.labels, ds.num_classes, 0.1, 0.05, split_rng);
  auto params = model::init_model(ds.feature_dim(), ds.num_views(), ds.num_classes, mc, 4);
  training::Adam adam(tc.generator_lr);
  training::Sgd sgd(tc.discriminator_lr);
  nd::Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(training::discriminator_step(data, params, sgd, mc));
    benchmark::DoNotOptimize(training::generator_step(data, split, params, adam, mc, tc, rng));
  }
}
BENCHMARK(BM_TrainingEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
