#include "mgal/model/params.hpp"

#include <cmath>
#include <map>

#include "mgal/error.hpp"

namespace mgal::model {

HeadVariant parse_head_variant(std::string_view name) {
  if (name == "fc") return HeadVariant::kFullyConnected;
  if (name == "gconv") return HeadVariant::kGraphConv;
  if (name == "per-view") return HeadVariant::kPerView;
  throw ConfigError("unknown head variant '" + std::string(name) + "' (expected fc or gconv)");
}

std::string_view to_string(HeadVariant v) {
  switch (v) {
    case HeadVariant::kFullyConnected:
      return "fc";
    case HeadVariant::kGraphConv:
      return "gconv";
    case HeadVariant::kPerView:
      return "per-view";
  }
  return "fc";
}

void ModelConfig::validate() const {
  if (generator_hidden.empty()) throw ConfigError("generator needs at least one layer");
  for (std::size_t s : generator_hidden)
    if (s == 0) throw ConfigError("generator layer sizes must be >= 1");
  for (std::size_t s : discriminator_hidden)
    if (s == 0) throw ConfigError("discriminator layer sizes must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must be in [0, 1)");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight decay must be >= 0");
}

bool operator==(const ModelParams& a, const ModelParams& b) {
  return a.generator.weights == b.generator.weights &&
         a.discriminator.weights == b.discriminator.weights &&
         a.discriminator.biases == b.discriminator.biases && a.head.weights == b.head.weights;
}

nd::Matrix init_glorot(std::size_t fan_in, std::size_t fan_out, nd::Rng& rng) {
  if (fan_in == 0 || fan_out == 0) throw DimensionError("glorot: dimensions must be positive");
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  nd::Matrix w(fan_in, fan_out);
  for (double& x : w.values()) x = rng.uniform(-bound, bound);
  return w;
}

GeneratorParams init_generator(std::size_t feature_dim, const ModelConfig& config, nd::Rng& rng) {
  GeneratorParams g;
  std::size_t in = feature_dim;
  for (std::size_t out : config.generator_hidden) {
    g.weights.push_back(init_glorot(in, out, rng));
    in = out;
  }
  return g;
}

DiscriminatorParams init_discriminator(std::size_t representation_dim, std::size_t num_views,
                                       const ModelConfig& config, nd::Rng& rng) {
  DiscriminatorParams d;
  std::size_t in = representation_dim;
  std::vector<std::size_t> sizes = config.discriminator_hidden;
  sizes.push_back(num_views);
  for (std::size_t out : sizes) {
    d.weights.push_back(init_glorot(in, out, rng));
    d.biases.emplace_back(1, out);
    in = out;
  }
  return d;
}

HeadParams init_head(std::size_t representation_dim, std::size_t num_views,
                     std::size_t num_classes, HeadVariant variant, nd::Rng& rng) {
  HeadParams h;
  if (variant == HeadVariant::kPerView) {
    for (std::size_t v = 0; v < num_views; ++v)
      h.weights.push_back(init_glorot(representation_dim, num_classes, rng));
  } else {
    h.weights.push_back(init_glorot(num_views * representation_dim, num_classes, rng));
  }
  return h;
}

ModelParams init_model(std::size_t feature_dim, std::size_t num_views, std::size_t num_classes,
                       const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  nd::Rng root(seed);
  nd::Rng gen_rng = root.fork(101);
  nd::Rng disc_rng = root.fork(102);
  nd::Rng head_rng = root.fork(103);
  ModelParams p;
  p.generator = init_generator(feature_dim, config, gen_rng);
  p.discriminator =
      init_discriminator(config.representation_dim(), num_views, config, disc_rng);
  p.head = init_head(config.representation_dim(), num_views, num_classes, config.head, head_rng);
  return p;
}

NamedMatrices to_named(const ModelParams& params) {
  NamedMatrices out;
  for (std::size_t l = 0; l < params.generator.weights.size(); ++l)
    out.emplace_back("generator.w" + std::to_string(l), params.generator.weights[l]);
  for (std::size_t l = 0; l < params.discriminator.weights.size(); ++l) {
    out.emplace_back("discriminator.w" + std::to_string(l), params.discriminator.weights[l]);
    out.emplace_back("discriminator.b" + std::to_string(l), params.discriminator.biases[l]);
  }
  for (std::size_t v = 0; v < params.head.weights.size(); ++v)
    out.emplace_back("head.w" + std::to_string(v), params.head.weights[v]);
  return out;
}

ModelParams from_named(const NamedMatrices& named) {
  std::map<std::string, const nd::Matrix*> by_name;
  for (const auto& [name, m] : named) {
    if (!by_name.emplace(name, &m).second) {
      throw ValidationError("checkpoint: duplicate parameter '" + name + "'");
    }
  }
  auto collect = [&](const std::string& prefix) {
    std::vector<nd::Matrix> out;
    for (std::size_t i = 0;; ++i) {
      auto it = by_name.find(prefix + std::to_string(i));
      if (it == by_name.end()) break;
      out.push_back(*it->second);
      by_name.erase(it);
    }
    return out;
  };
  ModelParams p;
  p.generator.weights = collect("generator.w");
  p.discriminator.weights = collect("discriminator.w");
  p.discriminator.biases = collect("discriminator.b");
  p.head.weights = collect("head.w");
  if (!by_name.empty()) {
    throw ValidationError("checkpoint: unexpected parameter '" + by_name.begin()->first + "'");
  }
  if (p.generator.weights.empty()) throw ValidationError("checkpoint: no generator weights");
  if (p.discriminator.weights.size() != p.discriminator.biases.size()) {
    throw ValidationError("checkpoint: discriminator weight/bias count mismatch");
  }
  return p;
}

}  // namespace mgal::model
