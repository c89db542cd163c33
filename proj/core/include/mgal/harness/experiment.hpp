#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mgal/graph/dataset.hpp"
#include "mgal/graph/split.hpp"
#include "mgal/model/params.hpp"
#include "mgal/training/trainer.hpp"

namespace mgal::harness {

enum class Method {
  kGcnSingle,  // GCN on one view
  kGcnMean,    // GCN on the averaged graph
  kMultiGcn,   // shared weights, per-view heads, lowest-training-loss view
  kMgl,        // concatenation head, no adversarial module
  kMgal,       // full adversarial model
};

Method parse_method(std::string_view name);
std::string_view to_string(Method m);

struct ExperimentSpec {
  Method method = Method::kMgal;
  std::size_t view = 0;  // GCN single-view only
  double label_ratio = 0.1;
  double validation_fraction = 0.05;
  std::size_t runs = 5;
  std::uint64_t base_seed = 0;
  model::ModelConfig model;
  training::TrainConfig train;
  std::size_t sweep_subset_cap = 64;

  void validate(std::size_t num_views) const;
  // Run r uses seed base_seed + r for both its split and its initialization.
  std::uint64_t run_seed(std::size_t run) const { return base_seed + run; }
};

// Split used by run `run` of `spec`; identical across methods.
graph::DataSplit split_for_run(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec,
                               std::size_t run);

struct RunResult {
  std::vector<double> accuracies;  // test accuracy per run, as fractions
  double mean = 0.0;
  double stddev = 0.0;             // population standard deviation
  std::vector<std::size_t> stopped_epochs;
  std::vector<training::TrainReport> reports;
  std::vector<model::ModelParams> params;
  std::vector<graph::DataSplit> splits;
  // dataset actually trained on by each run (after view selection/averaging)
  graph::MultiGraphDataset trained_on;
  model::ModelConfig model_config;
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};
MeanStd mean_std(std::span<const double> values);

RunResult run_gcn_single(const graph::MultiGraphDataset& dataset, std::size_t view,
                         const ExperimentSpec& spec);
RunResult run_gcn_m(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec);
RunResult run_multi_gcn(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec);
RunResult run_mgl(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec);
RunResult run_mgal(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec);

// Dispatches on spec.method.
RunResult run_method(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec);

}  // namespace mgal::harness
