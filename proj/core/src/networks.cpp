#include "mgal/model/networks.hpp"

#include <string>

#include "mgal/error.hpp"

namespace mgal::model {
namespace {

nd::Var leaf(nd::Tape& tape, const nd::Matrix& m, bool trainable) {
  return trainable ? tape.parameter(m) : tape.constant(m);
}

nd::Var dropout(nd::Var x, double rate, nd::Rng& rng) {
  nd::Matrix mask(x.rows(), x.cols());
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : mask.values()) v = rng.uniform() < rate ? 0.0 : keep_scale;
  return nd::mul(x, x.tape()->constant(std::move(mask)));
}

}  // namespace

GeneratorVars bind(nd::Tape& tape, const GeneratorParams& p, bool trainable) {
  GeneratorVars v;
  for (const auto& w : p.weights) v.weights.push_back(leaf(tape, w, trainable));
  return v;
}

DiscriminatorVars bind(nd::Tape& tape, const DiscriminatorParams& p, bool trainable) {
  DiscriminatorVars v;
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    v.weights.push_back(leaf(tape, p.weights[l], trainable));
    v.biases.push_back(leaf(tape, p.biases[l], trainable));
  }
  return v;
}

HeadVars bind(nd::Tape& tape, const HeadParams& p, bool trainable) {
  HeadVars v;
  for (const auto& w : p.weights) v.weights.push_back(leaf(tape, w, trainable));
  return v;
}

nd::Var generator_forward(nd::Var features, const graph::NormalizedGraph& graph,
                          const GeneratorVars& theta, const GeneratorOptions& options) {
  if (theta.weights.empty()) throw DimensionError("generator has no layers");
  if (graph.num_nodes() != features.rows()) {
    throw DimensionError("generator: graph has " + std::to_string(graph.num_nodes()) +
                         " nodes, features have " + std::to_string(features.rows()) + " rows");
  }
  if (options.dropout > 0.0 && options.rng == nullptr) {
    throw ContractError("generator: dropout requested without an rng");
  }
  nd::Var h = features;
  const std::size_t layers = theta.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    const nd::Var w = theta.weights[l];
    if (h.cols() != w.rows()) {
      throw DimensionError("generator layer " + std::to_string(l) + ": input " +
                           nd::shape_string(h.value()) + ", weight " +
                           nd::shape_string(w.value()));
    }
    if (options.dropout > 0.0) h = dropout(h, options.dropout, *options.rng);
    // propagate through the narrower side first
    if (w.rows() <= w.cols()) {
      h = nd::matmul(nd::spmm(graph.propagation, h), w);
    } else {
      h = nd::spmm(graph.propagation, nd::matmul(h, w));
    }
    if (l + 1 < layers || options.final_activation) h = nd::relu(h);
  }
  return h;
}

nd::Var discriminator_forward(nd::Var z, const DiscriminatorVars& params) {
  if (params.weights.empty()) throw DimensionError("discriminator has no layers");
  if (z.cols() != params.weights.front().rows()) {
    throw DimensionError("discriminator: input width " + std::to_string(z.cols()) +
                         ", expected " + std::to_string(params.weights.front().rows()));
  }
  nd::Var h = z;
  const std::size_t layers = params.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    h = nd::add_row_broadcast(nd::matmul(h, params.weights[l]), params.biases[l]);
    if (l + 1 < layers) h = nd::relu(h);
  }
  return nd::softmax_rows(h);
}

namespace {

nd::Var concat_for_head(std::span<const nd::Var> z_list, nd::Var w) {
  if (z_list.empty()) throw DimensionError("head: no representations");
  nd::Var z = nd::concat_cols(z_list);
  if (z.cols() != w.rows()) {
    throw DimensionError("head: concatenated width " + std::to_string(z.cols()) +
                         " vs weight " + nd::shape_string(w.value()));
  }
  return z;
}

}  // namespace

nd::Var head_forward_fc(std::span<const nd::Var> z_list, nd::Var w) {
  nd::Var z = concat_for_head(z_list, w);
  return nd::softmax_rows(nd::matmul(z, w));
}

nd::Var head_forward_gconv(std::span<const nd::Var> z_list, nd::Var w,
                           const graph::NormalizedGraph& averaged) {
  nd::Var z = concat_for_head(z_list, w);
  if (averaged.num_nodes() != z.rows()) {
    throw DimensionError("gconv head: averaged graph has " +
                         std::to_string(averaged.num_nodes()) + " nodes, representation has " +
                         std::to_string(z.rows()) + " rows");
  }
  return nd::softmax_rows(nd::spmm(averaged.propagation, nd::matmul(z, w)));
}

}  // namespace mgal::model
