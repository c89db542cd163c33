#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/rng.hpp"

namespace mgal::model {

enum class HeadVariant {
  kFullyConnected,  // U = softmax([Z1 | ... | Zm] W)
  kGraphConv,       // U = softmax(S_avg [Z1 | ... | Zm] W)
  kPerView,         // one k x c head per view (Multi-GCN baseline)
};

HeadVariant parse_head_variant(std::string_view name);
std::string_view to_string(HeadVariant v);

struct ModelConfig {
  std::vector<std::size_t> generator_hidden{64, 16};
  std::vector<std::size_t> discriminator_hidden{64, 16};
  HeadVariant head = HeadVariant::kFullyConnected;
  bool final_activation = false;
  double dropout = 0.0;       // generator layer-input dropout during generator steps
  double weight_decay = 0.0;  // L2 coefficient on generator and head weights

  std::size_t representation_dim() const { return generator_hidden.back(); }
  void validate() const;
};

// Weights shared by every view: layer l maps in_l -> out_l, no biases.
struct GeneratorParams {
  std::vector<nd::Matrix> weights;
};

// MLP k -> h1 -> ... -> m with biases.
struct DiscriminatorParams {
  std::vector<nd::Matrix> weights;
  std::vector<nd::Matrix> biases;  // 1 x out_l each
};

// One (m*k) x c matrix for the concatenating heads, or m matrices of k x c
// for the per-view head.
struct HeadParams {
  std::vector<nd::Matrix> weights;
};

struct ModelParams {
  GeneratorParams generator;
  DiscriminatorParams discriminator;
  HeadParams head;

  friend bool operator==(const ModelParams& a, const ModelParams& b);
};

// Uniform on [-b, b] with b = sqrt(6 / (fan_in + fan_out)).
nd::Matrix init_glorot(std::size_t fan_in, std::size_t fan_out, nd::Rng& rng);

GeneratorParams init_generator(std::size_t feature_dim, const ModelConfig& config, nd::Rng& rng);
DiscriminatorParams init_discriminator(std::size_t representation_dim, std::size_t num_views,
                                       const ModelConfig& config, nd::Rng& rng);
HeadParams init_head(std::size_t representation_dim, std::size_t num_views,
                     std::size_t num_classes, HeadVariant variant, nd::Rng& rng);

// Initialization streams are derived from `seed` so the generator, the
// discriminator and the head draw independently of one another.
ModelParams init_model(std::size_t feature_dim, std::size_t num_views, std::size_t num_classes,
                       const ModelConfig& config, std::uint64_t seed);

using NamedMatrices = std::vector<std::pair<std::string, nd::Matrix>>;

// Flattened view with stable names: generator.w<l>, discriminator.w<l>,
// discriminator.b<l>, head.w<v>.
NamedMatrices to_named(const ModelParams& params);
ModelParams from_named(const NamedMatrices& named);

}  // namespace mgal::model
