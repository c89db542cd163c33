#include "mgal/graph/synthetic.hpp"

#include <numeric>
#include <string>

#include "mgal/error.hpp"
#include "mgal/ndcore/rng.hpp"

namespace mgal::graph {

std::size_t SbmSpec::num_nodes() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void SbmSpec::validate() const {
  if (block_sizes.size() < 2) throw ValidationError("sbm: need at least two blocks");
  for (std::size_t s : block_sizes)
    if (s == 0) throw ValidationError("sbm: empty block");
  if (views.empty()) throw ValidationError("sbm: need at least one view");
  if (!(feature_noise >= 0.0)) throw ValidationError("sbm: feature noise must be >= 0");
  const std::size_t c = block_sizes.size();
  for (const auto& v : views) {
    for (double p : {v.intra, v.inter})
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sbm: probability outside [0, 1]");
    for (auto [a, b] : v.informative_pairs)
      if (a >= c || b >= c || a == b) throw ValidationError("sbm: bad informative class pair");
  }
}

MultiGraphDataset synth_multiview(const SbmSpec& spec) {
  spec.validate();
  const std::size_t c = spec.block_sizes.size();
  const std::size_t n = spec.num_nodes();
  nd::Rng root(spec.seed);

  MultiGraphDataset ds;
  ds.num_classes = c;
  ds.labels.reserve(n);
  for (std::size_t b = 0; b < c; ++b) ds.labels.insert(ds.labels.end(), spec.block_sizes[b], b);

  nd::Rng feature_rng = root.fork(0);
  ds.features = nd::Matrix(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double mean = ds.labels[i] == j ? 1.0 : 0.0;
      ds.features(i, j) = spec.feature_noise > 0.0 ? mean + spec.feature_noise * feature_rng.normal()
                                                   : mean;
    }
  }

  for (std::size_t v = 0; v < spec.views.size(); ++v) {
    const SbmView& view = spec.views[v];
    std::vector<double> prob(c * c, view.intra);
    for (auto [a, b] : view.informative_pairs) {
      prob[a * c + b] = view.inter;
      prob[b * c + a] = view.inter;
    }
    nd::Rng edge_rng = root.fork(1 + v);
    std::vector<nd::Triplet> entries;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge_rng.uniform() < prob[ds.labels[i] * c + ds.labels[j]]) {
          entries.push_back({i, j, 1.0});
          entries.push_back({j, i, 1.0});
        }
      }
    }
    ds.views.push_back(nd::CsrMatrix::from_triplets(n, n, std::move(entries)));
  }
  ds.validate();
  return ds;
}

SbmSpec synthetic_preset(std::string_view name, std::uint64_t seed) {
  SbmSpec spec;
  spec.seed = seed;
  if (name == "default") {
    spec.block_sizes = {100, 100, 100, 100};
    spec.feature_noise = 1.0;
    spec.views = {
        SbmView{0.08, 0.005, {{0, 1}}},
        SbmView{0.08, 0.005, {{2, 3}}},
        SbmView{0.08, 0.005, {{0, 2}}},
    };
    return spec;
  }
  if (name == "small") {
    spec.block_sizes = {20, 20, 20};
    spec.feature_noise = 0.5;
    spec.views = {
        SbmView{0.3, 0.02, {{0, 1}}},
        SbmView{0.3, 0.02, {{1, 2}}},
    };
    return spec;
  }
  throw ConfigError("unknown synthetic preset '" + std::string(name) + "'");
}

}  // namespace mgal::graph
