#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mgal/graph/dataset.hpp"
#include "mgal/graph/ops.hpp"
#include "mgal/graph/split.hpp"
#include "mgal/model/params.hpp"
#include "mgal/ndcore/rng.hpp"
#include "mgal/training/optim.hpp"

namespace mgal::training {

struct TrainConfig {
  std::size_t max_epochs = 500;
  double generator_lr = 0.005;      // Adam, generator + head
  double discriminator_lr = 0.01;   // SGD, discriminator
  std::size_t patience = 50;
  double adversarial_weight = 1.0;  // lambda in L_semi + lambda * L_adv
  std::size_t discriminator_steps = 1;
  // false: no discriminator updates and no adversarial term (MGL / GCN baselines)
  bool adversarial = true;
  bool non_saturating = false;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainReport {
  // one entry per executed epoch
  std::vector<double> generator_loss;  // L_semi + lambda * L_adv (or surrogate)
  std::vector<double> semi_loss;
  std::vector<double> adversarial_loss;       // L_adv seen by the discriminator; NaN if unused
  std::vector<double> discriminator_loss;     // -L_adv; NaN if unused
  std::vector<double> discriminator_accuracy; // view-origin accuracy; NaN if unused
  std::vector<double> validation_loss;        // L_semi on validation nodes; NaN if none
  double test_accuracy = 0.0;                 // NaN when the split has no test nodes
  std::size_t stopped_epoch = 0;
  std::size_t best_epoch = 0;
  // per-view head only: training loss of each view with the final parameters
  std::vector<double> final_view_losses;
  std::size_t selected_view = 0;
};

// Inputs prepared once per run: renormalized views and, for the graph-conv
// head, the renormalized average graph.
struct PreparedData {
  const graph::MultiGraphDataset* dataset = nullptr;
  std::vector<graph::NormalizedGraph> graphs;
  std::optional<graph::NormalizedGraph> averaged;
};

PreparedData prepare(const graph::MultiGraphDataset& dataset, model::HeadVariant head);

// Z^(v) for every view, evaluated without dropout.
std::vector<nd::Matrix> compute_embeddings(const PreparedData& data,
                                           const model::GeneratorParams& generator,
                                           const model::ModelConfig& config);

// Label distribution U (n x c). For the per-view head `view` picks the head.
nd::Matrix predict(const PreparedData& data, const model::ModelParams& params,
                   const model::ModelConfig& config, std::size_t view = 0);

struct DiscriminatorStepResult {
  double adversarial_loss = 0.0;  // L_adv before the update
  double accuracy = 0.0;          // fraction of (node, view) rows attributed to their view
};

// One SGD ascent step on L_adv over the discriminator only. The generator is
// evaluated as a constant.
DiscriminatorStepResult discriminator_step(const PreparedData& data, model::ModelParams& params,
                                           const Sgd& optimizer, const model::ModelConfig& config);

struct GeneratorStepResult {
  double total = 0.0;
  double semi = 0.0;
  double adversarial = 0.0;  // NaN when the adversarial term is off
};

// One Adam step on L_semi + lambda * L_adv over generator and head jointly;
// the discriminator is a constant.
GeneratorStepResult generator_step(const PreparedData& data, const graph::DataSplit& split,
                                   model::ModelParams& params, Adam& optimizer,
                                   const model::ModelConfig& config, const TrainConfig& train,
                                   nd::Rng& rng);

// Semi-supervised loss of the current parameters on `indices` (summed over
// views for the per-view head).
double semi_loss_value(const PreparedData& data, const model::ModelParams& params,
                       const model::ModelConfig& config, std::span<const std::size_t> indices);

// Lowest value wins; ties go to the lower index.
std::size_t select_lowest_loss_view(std::span<const double> losses);

struct TrainResult {
  TrainReport report;
  model::ModelParams params;  // best-validation snapshot
};

TrainResult train(const graph::MultiGraphDataset& dataset, const graph::DataSplit& split,
                  const model::ModelConfig& model_config, const TrainConfig& train_config);

}  // namespace mgal::training
