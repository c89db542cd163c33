#include "mgal/harness/sweep.hpp"

#include <algorithm>

#include "mgal/error.hpp"
#include "mgal/ndcore/rng.hpp"

namespace mgal::harness {

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t m, std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  if (s == 0 || s > m) return out;
  std::vector<std::size_t> current(s);
  for (std::size_t i = 0; i < s; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    // advance the rightmost index that still has room
    std::size_t i = s;
    while (i > 0 && current[i - 1] == m - s + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < s; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

SweepResult graph_count_sweep(const graph::MultiGraphDataset& dataset,
                              const ExperimentSpec& spec) {
  const std::size_t m = dataset.num_views();
  if (m < 2) {
    throw ConfigError("graph-count sweep needs at least 2 views, dataset has " +
                      std::to_string(m));
  }
  if (spec.method == Method::kGcnSingle) {
    throw ConfigError("graph-count sweep needs a multi-view method");
  }
  spec.validate(m);

  SweepResult result;
  for (std::size_t s = 1; s <= m; ++s) {
    SweepLevel level;
    level.size = s;
    auto subsets = enumerate_subsets(m, s);
    level.total_subsets = subsets.size();
    if (subsets.size() > spec.sweep_subset_cap) {
      nd::Rng rng = nd::Rng(spec.base_seed).fork(1000 + s);
      rng.shuffle(std::span(subsets));
      subsets.resize(spec.sweep_subset_cap);
      std::sort(subsets.begin(), subsets.end());
      level.sampled = true;
    }
    double total = 0.0;
    std::size_t count = 0;
    for (auto& views : subsets) {
      RunResult run = s == 1 ? run_gcn_single(dataset, views.front(), spec)
                             : run_method(dataset.select_views(views), spec);
      SubsetResult sub;
      sub.views = std::move(views);
      sub.accuracies = run.accuracies;
      sub.mean = run.mean;
      for (double a : run.accuracies) total += a;
      count += run.accuracies.size();
      level.subsets.push_back(std::move(sub));
    }
    level.mean = total / static_cast<double>(count);
    result.levels.push_back(std::move(level));
  }
  return result;
}

}  // namespace mgal::harness
