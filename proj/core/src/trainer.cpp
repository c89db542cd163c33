#include "mgal/training/trainer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mgal/error.hpp"
#include "mgal/model/networks.hpp"
#include "mgal/ndcore/tape.hpp"
#include "mgal/training/early_stopping.hpp"
#include "mgal/training/losses.hpp"

namespace mgal::training {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using model::HeadVariant;

struct Forward {
  std::vector<nd::Var> z;
  std::vector<nd::Var> u;  // one entry, or one per view for the per-view head
};

Forward forward(nd::Tape& tape, const PreparedData& data, const model::GeneratorVars& gen,
                const model::HeadVars& head, const model::ModelConfig& config,
                const model::GeneratorOptions& options) {
  Forward f;
  nd::Var x = tape.constant(data.dataset->features);
  for (const auto& g : data.graphs) f.z.push_back(model::generator_forward(x, g, gen, options));
  switch (config.head) {
    case HeadVariant::kFullyConnected:
      f.u.push_back(model::head_forward_fc(f.z, head.weights.at(0)));
      break;
    case HeadVariant::kGraphConv:
      f.u.push_back(model::head_forward_gconv(f.z, head.weights.at(0), *data.averaged));
      break;
    case HeadVariant::kPerView:
      if (head.weights.size() != f.z.size()) {
        throw DimensionError("per-view head has " + std::to_string(head.weights.size()) +
                             " weights for " + std::to_string(f.z.size()) + " views");
      }
      for (std::size_t v = 0; v < f.z.size(); ++v)
        f.u.push_back(model::head_forward_fc(std::span(&f.z[v], 1), head.weights[v]));
      break;
  }
  return f;
}

nd::Var semi_over_heads(const Forward& f, std::span<const std::size_t> labels,
                        std::span<const std::size_t> indices) {
  nd::Var total = semi_loss(f.u.front(), labels, indices);
  for (std::size_t v = 1; v < f.u.size(); ++v)
    total = nd::add(total, semi_loss(f.u[v], labels, indices));
  return total;
}

std::vector<nd::Var> discriminate(const std::vector<nd::Var>& z,
                                  const model::DiscriminatorVars& disc) {
  std::vector<nd::Var> out;
  out.reserve(z.size());
  for (nd::Var zv : z) out.push_back(model::discriminator_forward(zv, disc));
  return out;
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NumericError(std::string("non-finite ") + what);
}

}  // namespace

void TrainConfig::validate() const {
  if (max_epochs == 0) throw ConfigError("max epochs must be >= 1");
  if (!(generator_lr >= 0.0) || !(discriminator_lr >= 0.0)) {
    throw ConfigError("learning rates must be >= 0");
  }
  if (patience == 0) throw ConfigError("patience must be >= 1");
  if (!(adversarial_weight >= 0.0)) throw ConfigError("adversarial weight must be >= 0");
  if (adversarial && discriminator_steps == 0) {
    throw ConfigError("discriminator steps must be >= 1");
  }
}

PreparedData prepare(const graph::MultiGraphDataset& dataset, HeadVariant head) {
  dataset.validate();
  PreparedData data;
  data.dataset = &dataset;
  for (const auto& a : dataset.views) data.graphs.push_back(graph::renormalize(a));
  if (head == HeadVariant::kGraphConv) {
    data.averaged = graph::renormalize(graph::average_graphs(dataset.views));
  }
  return data;
}

std::vector<nd::Matrix> compute_embeddings(const PreparedData& data,
                                           const model::GeneratorParams& generator,
                                           const model::ModelConfig& config) {
  nd::Tape tape;
  const auto gen = model::bind(tape, generator, false);
  nd::Var x = tape.constant(data.dataset->features);
  model::GeneratorOptions options;
  options.final_activation = config.final_activation;
  std::vector<nd::Matrix> out;
  for (const auto& g : data.graphs)
    out.push_back(model::generator_forward(x, g, gen, options).value());
  return out;
}

nd::Matrix predict(const PreparedData& data, const model::ModelParams& params,
                   const model::ModelConfig& config, std::size_t view) {
  nd::Tape tape;
  const auto gen = model::bind(tape, params.generator, false);
  const auto head = model::bind(tape, params.head, false);
  model::GeneratorOptions options;
  options.final_activation = config.final_activation;
  Forward f = forward(tape, data, gen, head, config, options);
  if (view >= f.u.size()) throw IndexError("predict: head " + std::to_string(view));
  return f.u[view].value();
}

double semi_loss_value(const PreparedData& data, const model::ModelParams& params,
                       const model::ModelConfig& config, std::span<const std::size_t> indices) {
  nd::Tape tape;
  const auto gen = model::bind(tape, params.generator, false);
  const auto head = model::bind(tape, params.head, false);
  model::GeneratorOptions options;
  options.final_activation = config.final_activation;
  Forward f = forward(tape, data, gen, head, config, options);
  return semi_over_heads(f, data.dataset->labels, indices).value()(0, 0);
}

DiscriminatorStepResult discriminator_step(const PreparedData& data, model::ModelParams& params,
                                           const Sgd& optimizer,
                                           const model::ModelConfig& config) {
  nd::Tape tape;
  const auto gen = model::bind(tape, params.generator, false);
  const auto disc = model::bind(tape, params.discriminator, true);
  nd::Var x = tape.constant(data.dataset->features);
  model::GeneratorOptions options;
  options.final_activation = config.final_activation;
  std::vector<nd::Var> z;
  for (const auto& g : data.graphs) z.push_back(model::generator_forward(x, g, gen, options));
  const auto outputs = discriminate(z, disc);
  nd::Var adv = adversarial_loss(outputs);

  DiscriminatorStepResult result;
  result.adversarial_loss = adv.value()(0, 0);
  require_finite(result.adversarial_loss, "adversarial loss in discriminator step");
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t v = 0; v < outputs.size(); ++v) {
    const nd::Matrix& p = outputs[v].value();
    for (std::size_t i = 0; i < p.rows(); ++i) correct += argmax_row(p.row(i)) == v ? 1 : 0;
    total += p.rows();
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(total);

  // ascent on L_adv == descent on -L_adv
  nd::Var objective = nd::scale(adv, -1.0);
  tape.backward(objective);
  std::vector<nd::Matrix*> targets;
  std::vector<nd::Matrix> grads;
  for (std::size_t l = 0; l < disc.weights.size(); ++l) {
    targets.push_back(&params.discriminator.weights[l]);
    grads.push_back(disc.weights[l].grad());
    targets.push_back(&params.discriminator.biases[l]);
    grads.push_back(disc.biases[l].grad());
  }
  optimizer.step(targets, grads);
  return result;
}

GeneratorStepResult generator_step(const PreparedData& data, const graph::DataSplit& split,
                                   model::ModelParams& params, Adam& optimizer,
                                   const model::ModelConfig& config, const TrainConfig& train,
                                   nd::Rng& rng) {
  nd::Tape tape;
  const auto gen = model::bind(tape, params.generator, true);
  const auto head = model::bind(tape, params.head, true);
  model::GeneratorOptions options;
  options.final_activation = config.final_activation;
  options.dropout = config.dropout;
  options.rng = &rng;
  Forward f = forward(tape, data, gen, head, config, options);

  GeneratorStepResult result;
  nd::Var semi = semi_over_heads(f, data.dataset->labels, split.labeled);
  nd::Var total = semi;
  result.adversarial = kNaN;
  if (train.adversarial) {
    const auto disc = model::bind(tape, params.discriminator, false);
    const auto outputs = discriminate(f.z, disc);
    nd::Var adv = adversarial_loss(outputs);
    result.adversarial = adv.value()(0, 0);
    nd::Var term = train.non_saturating ? non_saturating_generator_loss(outputs) : adv;
    total = nd::add(semi, nd::scale(term, train.adversarial_weight));
  }
  result.semi = semi.value()(0, 0);
  result.total = total.value()(0, 0);
  require_finite(result.total, "generator objective");

  tape.backward(total);
  std::vector<nd::Matrix*> targets;
  std::vector<nd::Matrix> grads;
  for (std::size_t l = 0; l < gen.weights.size(); ++l) {
    targets.push_back(&params.generator.weights[l]);
    grads.push_back(gen.weights[l].grad());
  }
  for (std::size_t h = 0; h < head.weights.size(); ++h) {
    targets.push_back(&params.head.weights[h]);
    grads.push_back(head.weights[h].grad());
  }
  if (config.weight_decay > 0.0) {
    for (std::size_t i = 0; i < targets.size(); ++i)
      nd::axpy(config.weight_decay, *targets[i], grads[i]);
  }
  optimizer.step(targets, grads);
  return result;
}

std::size_t select_lowest_loss_view(std::span<const double> losses) {
  if (losses.empty()) throw ConfigError("no view losses to select from");
  std::size_t best = 0;
  for (std::size_t v = 1; v < losses.size(); ++v)
    if (losses[v] < losses[best]) best = v;
  return best;
}

TrainResult train(const graph::MultiGraphDataset& dataset, const graph::DataSplit& split,
                  const model::ModelConfig& model_config, const TrainConfig& train_config) {
  model_config.validate();
  train_config.validate();
  if (train_config.adversarial && dataset.num_views() < 2) {
    throw ConfigError("adversarial training needs at least 2 views, dataset has " +
                      std::to_string(dataset.num_views()));
  }
  if (split.labeled.empty()) throw ConfigError("training split has no labeled nodes");

  const PreparedData data = prepare(dataset, model_config.head);
  model::ModelParams params =
      model::init_model(dataset.feature_dim(), dataset.num_views(), dataset.num_classes,
                        model_config, train_config.seed);
  Sgd disc_opt(train_config.discriminator_lr);
  Adam gen_opt(train_config.generator_lr);
  nd::Rng dropout_rng = nd::Rng(train_config.seed).fork(104);

  TrainResult result;
  TrainReport& report = result.report;
  EarlyStopping stopper(train_config.patience);
  const bool has_validation = !split.validation.empty();
  model::ModelParams best = params;

  std::size_t epoch = 0;
  try {
    while (epoch < train_config.max_epochs) {
      ++epoch;
      DiscriminatorStepResult disc{kNaN, kNaN};
      if (train_config.adversarial) {
        for (std::size_t s = 0; s < train_config.discriminator_steps; ++s)
          disc = discriminator_step(data, params, disc_opt, model_config);
      }
      const GeneratorStepResult gen =
          generator_step(data, split, params, gen_opt, model_config, train_config, dropout_rng);
      const double val = has_validation
                             ? semi_loss_value(data, params, model_config, split.validation)
                             : kNaN;
      if (has_validation) require_finite(val, "validation loss");

      report.generator_loss.push_back(gen.total);
      report.semi_loss.push_back(gen.semi);
      report.adversarial_loss.push_back(disc.adversarial_loss);
      report.discriminator_loss.push_back(-disc.adversarial_loss);
      report.discriminator_accuracy.push_back(disc.accuracy);
      report.validation_loss.push_back(val);

      if (has_validation) {
        if (stopper.observe(val)) best = params;
        if (stopper.should_stop()) break;
      }
    }
  } catch (const NumericError& e) {
    throw NumericError("epoch " + std::to_string(epoch) + ": " + e.what());
  }

  report.stopped_epoch = epoch;
  if (has_validation) {
    report.best_epoch = stopper.best_epoch();
    params = std::move(best);
  } else {
    report.best_epoch = epoch;
  }

  std::size_t view = 0;
  if (model_config.head == HeadVariant::kPerView) {
    for (std::size_t v = 0; v < dataset.num_views(); ++v) {
      // per-view losses of the final parameters on the labeled nodes
      nd::Tape tape;
      const auto gen = model::bind(tape, params.generator, false);
      const auto head = model::bind(tape, params.head, false);
      model::GeneratorOptions options;
      options.final_activation = model_config.final_activation;
      nd::Var x = tape.constant(dataset.features);
      nd::Var z = model::generator_forward(x, data.graphs[v], gen, options);
      nd::Var u = model::head_forward_fc(std::span(&z, 1), head.weights[v]);
      report.final_view_losses.push_back(semi_loss(u, dataset.labels, split.labeled).value()(0, 0));
    }
    view = select_lowest_loss_view(report.final_view_losses);
    report.selected_view = view;
  }
  report.test_accuracy =
      split.test.empty()
          ? kNaN
          : evaluate_accuracy(predict(data, params, model_config, view), dataset.labels, split.test);
  result.params = std::move(params);
  return result;
}

}  // namespace mgal::training
