#include "mgal/harness/experiment.hpp"

#include <cmath>

#include "mgal/error.hpp"
#include "mgal/graph/ops.hpp"

namespace mgal::harness {
namespace {

// Stream id for split sampling; initialization streams live in init_model.
constexpr std::uint64_t kSplitStream = 7;

RunResult run_all(const graph::MultiGraphDataset& trained_on, const ExperimentSpec& spec,
                  const model::ModelConfig& model_config,
                  const training::TrainConfig& train_template) {
  RunResult out;
  for (std::size_t r = 0; r < spec.runs; ++r) {
    graph::DataSplit split = split_for_run(trained_on, spec, r);
    training::TrainConfig tc = train_template;
    tc.seed = spec.run_seed(r);
    training::TrainResult res = training::train(trained_on, split, model_config, tc);
    out.accuracies.push_back(res.report.test_accuracy);
    out.stopped_epochs.push_back(res.report.stopped_epoch);
    out.reports.push_back(std::move(res.report));
    out.params.push_back(std::move(res.params));
    out.splits.push_back(std::move(split));
  }
  const MeanStd ms = mean_std(out.accuracies);
  out.mean = ms.mean;
  out.stddev = ms.stddev;
  out.trained_on = trained_on;
  out.model_config = model_config;
  return out;
}

training::TrainConfig non_adversarial(const training::TrainConfig& tc) {
  training::TrainConfig out = tc;
  out.adversarial = false;
  out.adversarial_weight = 0.0;
  return out;
}

model::ModelConfig with_head(const model::ModelConfig& mc, model::HeadVariant head) {
  model::ModelConfig out = mc;
  out.head = head;
  return out;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "gcn") return Method::kGcnSingle;
  if (name == "gcn-m") return Method::kGcnMean;
  if (name == "multi-gcn") return Method::kMultiGcn;
  if (name == "mgl") return Method::kMgl;
  if (name == "mgal") return Method::kMgal;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected gcn, gcn-m, multi-gcn, mgl or mgal)");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kGcnSingle:
      return "gcn";
    case Method::kGcnMean:
      return "gcn-m";
    case Method::kMultiGcn:
      return "multi-gcn";
    case Method::kMgl:
      return "mgl";
    case Method::kMgal:
      return "mgal";
  }
  return "mgal";
}

void ExperimentSpec::validate(std::size_t num_views) const {
  if (runs == 0) throw ConfigError("run count must be >= 1");
  if (num_views == 0) throw ConfigError("dataset has no views");
  if (method == Method::kGcnSingle && view >= num_views) {
    throw ConfigError("view " + std::to_string(view) + " requested but the dataset has " +
                      std::to_string(num_views) + " views");
  }
  if (method == Method::kMgal && num_views < 2) {
    throw ConfigError("mgal needs at least 2 views");
  }
  if (sweep_subset_cap == 0) throw ConfigError("sweep subset cap must be >= 1");
  model.validate();
  train.validate();
}

graph::DataSplit split_for_run(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec,
                               std::size_t run) {
  nd::Rng rng = nd::Rng(spec.run_seed(run)).fork(kSplitStream);
  return graph::stratified_split(dataset.labels, dataset.num_classes, spec.label_ratio,
                                 spec.validation_fraction, rng);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double s = 0.0;
  for (double v : values) s += v;
  out.mean = s / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return out;
}

RunResult run_gcn_single(const graph::MultiGraphDataset& dataset, std::size_t view,
                         const ExperimentSpec& spec) {
  if (view >= dataset.num_views()) {
    throw ConfigError("view " + std::to_string(view) + " requested but the dataset has " +
                      std::to_string(dataset.num_views()) + " views");
  }
  const std::size_t ids[] = {view};
  return run_mgl(dataset.select_views(ids), spec);
}

RunResult run_gcn_m(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec) {
  dataset.validate();
  graph::MultiGraphDataset averaged;
  averaged.features = dataset.features;
  averaged.labels = dataset.labels;
  averaged.num_classes = dataset.num_classes;
  averaged.views.push_back(graph::average_graphs(dataset.views));
  return run_mgl(averaged, spec);
}

RunResult run_multi_gcn(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec) {
  ExperimentSpec s = spec;
  s.method = Method::kMultiGcn;
  s.validate(dataset.num_views());
  return run_all(dataset, spec, with_head(spec.model, model::HeadVariant::kPerView),
                 non_adversarial(spec.train));
}

RunResult run_mgl(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec) {
  ExperimentSpec s = spec;
  s.method = Method::kMgl;
  s.validate(dataset.num_views());
  model::ModelConfig mc = spec.model;
  if (mc.head == model::HeadVariant::kPerView) mc.head = model::HeadVariant::kFullyConnected;
  return run_all(dataset, spec, mc, non_adversarial(spec.train));
}

RunResult run_mgal(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec) {
  ExperimentSpec s = spec;
  s.method = Method::kMgal;
  s.validate(dataset.num_views());
  training::TrainConfig tc = spec.train;
  tc.adversarial = true;
  return run_all(dataset, spec, spec.model, tc);
}

RunResult run_method(const graph::MultiGraphDataset& dataset, const ExperimentSpec& spec) {
  switch (spec.method) {
    case Method::kGcnSingle:
      return run_gcn_single(dataset, spec.view, spec);
    case Method::kGcnMean:
      return run_gcn_m(dataset, spec);
    case Method::kMultiGcn:
      return run_multi_gcn(dataset, spec);
    case Method::kMgl:
      return run_mgl(dataset, spec);
    case Method::kMgal:
      return run_mgal(dataset, spec);
  }
  throw ConfigError("unhandled method");
}

}  // namespace mgal::harness
