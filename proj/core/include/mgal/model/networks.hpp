#pragma once

#include <span>
#include <vector>

#include "mgal/graph/ops.hpp"
#include "mgal/model/params.hpp"
#include "mgal/ndcore/rng.hpp"
#include "mgal/ndcore/tape.hpp"

namespace mgal::model {

// Parameters bound to a tape as leaves. `trainable` selects parameter vs constant.
struct GeneratorVars {
  std::vector<nd::Var> weights;
};
struct DiscriminatorVars {
  std::vector<nd::Var> weights;
  std::vector<nd::Var> biases;
};
struct HeadVars {
  std::vector<nd::Var> weights;
};

GeneratorVars bind(nd::Tape& tape, const GeneratorParams& p, bool trainable);
DiscriminatorVars bind(nd::Tape& tape, const DiscriminatorParams& p, bool trainable);
HeadVars bind(nd::Tape& tape, const HeadParams& p, bool trainable);

struct GeneratorOptions {
  bool final_activation = false;
  // Inverted dropout on every layer input; needs `rng` when > 0.
  double dropout = 0.0;
  nd::Rng* rng = nullptr;
};

// H_0 = X, H_{l+1} = act(S H_l Theta_l); relu on hidden layers, the last
// layer is linear unless final_activation is set. Returns Z = H_L (n x k).
nd::Var generator_forward(nd::Var features, const graph::NormalizedGraph& graph,
                          const GeneratorVars& theta, const GeneratorOptions& options = {});

// Relu MLP ending in an m-way softmax; each output row is a distribution over views.
nd::Var discriminator_forward(nd::Var z, const DiscriminatorVars& params);

// U = softmax([Z1 | ... | Zm] W)
nd::Var head_forward_fc(std::span<const nd::Var> z_list, nd::Var w);

// U = softmax(S_avg [Z1 | ... | Zm] W), S_avg the renormalized mean adjacency.
nd::Var head_forward_gconv(std::span<const nd::Var> z_list, nd::Var w,
                           const graph::NormalizedGraph& averaged);

}  // namespace mgal::model
