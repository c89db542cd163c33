#include "mgal/harness/probe.hpp"

#include <numeric>
#include <string>

#include "mgal/error.hpp"
#include "mgal/model/networks.hpp"
#include "mgal/ndcore/tape.hpp"
#include "mgal/training/losses.hpp"
#include "mgal/training/optim.hpp"

namespace mgal::harness {

double probe_alignment(std::span<const nd::Matrix> embeddings, nd::Rng& rng,
                       const ProbeConfig& config) {
  const std::size_t m = embeddings.size();
  if (m < 2) throw ConfigError("alignment probe needs at least 2 views");
  const std::size_t n = embeddings.front().rows();
  const std::size_t k = embeddings.front().cols();
  for (const auto& z : embeddings) {
    if (z.rows() != n || z.cols() != k) throw DimensionError("probe: embedding shapes differ");
  }
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
    throw ConfigError("probe train fraction must be in (0, 1)");
  }
  std::vector<std::size_t> nodes(n);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  rng.shuffle(std::span(nodes));
  const auto n_train = static_cast<std::size_t>(config.train_fraction * static_cast<double>(n));
  if (n_train == 0 || n_train == n) throw ConfigError("probe split leaves an empty side");
  const std::span<const std::size_t> train_nodes(nodes.data(), n_train);
  const std::span<const std::size_t> test_nodes(nodes.data() + n_train, n - n_train);

  model::ModelConfig shape;
  shape.discriminator_hidden = config.hidden;
  model::DiscriminatorParams params = model::init_discriminator(k, m, shape, rng);
  training::Adam optimizer(config.learning_rate);
  const double weight = -1.0 / static_cast<double>(n_train * m);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    nd::Tape tape;
    const auto vars = model::bind(tape, params, true);
    nd::Var loss;
    for (std::size_t v = 0; v < m; ++v) {
      nd::Var rows = nd::row_select(tape.constant(embeddings[v]), train_nodes);
      nd::Var p = model::discriminator_forward(rows, vars);
      nd::Matrix mask(n_train, m);
      for (std::size_t i = 0; i < n_train; ++i) mask(i, v) = weight;
      nd::Var term = nd::sum(nd::mul(nd::log_clamped(p), tape.constant(std::move(mask))));
      loss = loss.valid() ? nd::add(loss, term) : term;
    }
    tape.backward(loss);
    std::vector<nd::Matrix*> targets;
    std::vector<nd::Matrix> grads;
    for (std::size_t l = 0; l < vars.weights.size(); ++l) {
      targets.push_back(&params.weights[l]);
      grads.push_back(vars.weights[l].grad());
      targets.push_back(&params.biases[l]);
      grads.push_back(vars.biases[l].grad());
    }
    optimizer.step(targets, grads);
  }

  nd::Tape tape;
  const auto vars = model::bind(tape, params, false);
  std::size_t correct = 0;
  for (std::size_t v = 0; v < m; ++v) {
    nd::Var rows = nd::row_select(tape.constant(embeddings[v]), test_nodes);
    const nd::Matrix& p = model::discriminator_forward(rows, vars).value();
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (training::argmax_row(p.row(i)) == v) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_nodes.size() * m);
}

}  // namespace mgal::harness
