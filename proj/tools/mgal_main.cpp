#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgal/cli/commands.hpp"
#include "mgal/cli/config.hpp"
#include "mgal/error.hpp"

namespace {

struct Flags {
  std::string config;
  std::map<std::string, std::string> values;  // config key -> raw flag value
  std::vector<std::string> sets;              // --set key=value
};

void add_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "key = value config file (flags override it)");
  const std::pair<const char*, const char*> keyed[] = {
      {"seed", "base seed; every random stream derives from it"},
      {"method", "comma list of gcn, gcn-m, multi-gcn, mgl, mgal"},
      {"ratio", "comma list of labeled fractions per class"},
      {"runs", "number of seeded runs per method"},
      {"lambda", "adversarial weight"},
      {"head", "classification head: fc or gconv"},
      {"out", "output directory"},
      {"synthetic", "synthetic preset name (default, small)"},
      {"dataset", "dataset manifest; overrides --synthetic"},
      {"view", "view index for gcn, or 'all'"},
      {"checkpoint", "checkpoint to export"},
  };
  for (const auto& [key, help] : keyed) {
    cmd->add_option_function<std::string>(
        std::string("--") + key, [&flags, k = std::string(key)](const std::string& v) {
          flags.values[k] = v;
        },
        help);
  }
  cmd->add_option("--set", flags.sets, "any config key as key=value (repeatable)");
}

mgal::cli::CliConfig resolve(const Flags& flags) {
  mgal::cli::CliConfig config;
  if (!flags.config.empty()) mgal::cli::apply_config_file(config, flags.config);
  for (const auto& s : flags.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw mgal::ConfigError("--set expects key=value, got '" + s + "'");
    mgal::cli::set_key(config, s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& [key, value] : flags.values) mgal::cli::set_key(config, key, value);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-graph adversarial learning experiments"};
  app.require_subcommand(1);

  Flags flags;
  auto* train = app.add_subcommand("train", "train and evaluate methods over seeded runs");
  auto* sweep = app.add_subcommand("sweep", "accuracy versus number of views");
  auto* exp = app.add_subcommand("export", "write per-view embeddings of a checkpoint");
  auto* synth = app.add_subcommand("synth", "write a synthetic dataset to disk");
  for (auto* cmd : {train, sweep, exp, synth}) add_flags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  CLI::App* cmd = app.get_subcommands().front();
  mgal::cli::CliConfig config;
  try {
    config = resolve(flags);
  } catch (const mgal::Error& e) {
    std::cerr << "mgal " << cmd->get_name() << ": " << e.what() << "\n\n" << cmd->help();
    return 2;
  }

  if (cmd == train) return mgal::cli::cmd_train(config, std::cout, std::cerr);
  if (cmd == sweep) return mgal::cli::cmd_sweep(config, std::cout, std::cerr);
  if (cmd == exp) return mgal::cli::cmd_export(config, std::cout, std::cerr);
  return mgal::cli::cmd_synth(config, std::cout, std::cerr);
}
