#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgal/harness/experiment.hpp"

namespace mgal::cli {

// Fully resolved command configuration. Layers apply in order: built-in
// defaults, then a `key = value` config file, then command-line flags.
struct CliConfig {
  std::uint64_t seed = 0;
  std::string synthetic = "default";  // preset, used when `dataset` is empty
  std::filesystem::path dataset;      // manifest path
  std::filesystem::path out = "mgal-out";
  std::filesystem::path checkpoint;   // export only
  std::vector<harness::Method> methods{harness::Method::kMgal};
  std::optional<std::size_t> view;    // GCN single-view; unset means every view
  std::vector<double> ratios{0.1};
  // method, view and label_ratio are filled per table cell; base_seed from `seed`
  harness::ExperimentSpec experiment;

  void validate() const;
};

// Every key accepted by set_key / config files, in snapshot order.
const std::vector<std::string_view>& config_keys();

// Throws ConfigError on an unknown key or a malformed value.
void set_key(CliConfig& config, std::string_view key, std::string_view value);
// Lines of `key = value`; '#' starts a comment.
void apply_config_text(CliConfig& config, std::string_view text, std::string_view origin);
void apply_config_file(CliConfig& config, const std::filesystem::path& path);

// Snapshot listing every key; feeding it back through apply_config_text
// reproduces the same configuration.
std::string to_config_text(const CliConfig& config);

// Spec for one (method, view, ratio) cell.
harness::ExperimentSpec cell_spec(const CliConfig& config, harness::Method method,
                                  std::size_t view, double ratio);

}  // namespace mgal::cli
