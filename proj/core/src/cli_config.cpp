#include "mgal/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "mgal/error.hpp"
#include "mgal/text.hpp"

namespace mgal::cli {
namespace {

std::string key_error(std::string_view key, std::string_view value, std::string_view expected) {
  return "config key '" + std::string(key) + "': invalid value '" + std::string(value) +
         "' (expected " + std::string(expected) + ")";
}

double to_double(std::string_view key, std::string_view value) {
  try {
    return text::parse_double(value, key);
  } catch (const ValidationError&) {
    throw ConfigError(key_error(key, value, "a number"));
  }
}

std::size_t to_count(std::string_view key, std::string_view value) {
  try {
    return text::parse_index(value, key);
  } catch (const ValidationError&) {
    throw ConfigError(key_error(key, value, "a non-negative integer"));
  }
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key_error(key, value, "true or false"));
}

std::vector<std::size_t> to_counts(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  for (auto tok : text::split(value, ", ")) out.push_back(to_count(key, tok));
  if (out.empty()) throw ConfigError(key_error(key, value, "a comma separated list"));
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += fmt(xs[i]);
  }
  return s;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "seed",        "synthetic",  "dataset",  "out",          "checkpoint",
      "method",      "view",       "ratio",    "validation",   "runs",
      "gen_hidden",  "disc_hidden", "head",    "final_activation", "dropout",
      "weight_decay", "epochs",    "gen_lr",   "disc_lr",      "patience",
      "lambda",      "disc_steps", "non_saturating", "sweep_cap"};
  return keys;
}

void set_key(CliConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = text::trim(raw);
  auto& model = c.experiment.model;
  auto& train = c.experiment.train;
  if (key == "seed") {
    c.seed = to_count(key, value);
  } else if (key == "synthetic") {
    c.synthetic = std::string(value);
  } else if (key == "dataset") {
    c.dataset = std::filesystem::path(std::string(value));
  } else if (key == "out") {
    c.out = std::filesystem::path(std::string(value));
  } else if (key == "checkpoint") {
    c.checkpoint = std::filesystem::path(std::string(value));
  } else if (key == "method") {
    c.methods.clear();
    for (auto tok : text::split(value, ", ")) {
      try {
        c.methods.push_back(harness::parse_method(tok));
      } catch (const Error&) {
        throw ConfigError(key_error(key, tok, "gcn, gcn-m, multi-gcn, mgl or mgal"));
      }
    }
    if (c.methods.empty()) throw ConfigError(key_error(key, value, "at least one method"));
  } else if (key == "view") {
    if (value == "all") {
      c.view.reset();
    } else {
      c.view = to_count(key, value);
    }
  } else if (key == "ratio") {
    c.ratios.clear();
    for (auto tok : text::split(value, ", ")) c.ratios.push_back(to_double(key, tok));
    if (c.ratios.empty()) throw ConfigError(key_error(key, value, "at least one ratio"));
  } else if (key == "validation") {
    c.experiment.validation_fraction = to_double(key, value);
  } else if (key == "runs") {
    c.experiment.runs = to_count(key, value);
  } else if (key == "gen_hidden") {
    model.generator_hidden = to_counts(key, value);
  } else if (key == "disc_hidden") {
    model.discriminator_hidden = to_counts(key, value);
  } else if (key == "head") {
    if (value == "fc") {
      model.head = model::HeadVariant::kFullyConnected;
    } else if (value == "gconv") {
      model.head = model::HeadVariant::kGraphConv;
    } else {
      throw ConfigError(key_error(key, value, "fc or gconv"));
    }
  } else if (key == "final_activation") {
    model.final_activation = to_bool(key, value);
  } else if (key == "dropout") {
    model.dropout = to_double(key, value);
  } else if (key == "weight_decay") {
    model.weight_decay = to_double(key, value);
  } else if (key == "epochs") {
    train.max_epochs = to_count(key, value);
  } else if (key == "gen_lr") {
    train.generator_lr = to_double(key, value);
  } else if (key == "disc_lr") {
    train.discriminator_lr = to_double(key, value);
  } else if (key == "patience") {
    train.patience = to_count(key, value);
  } else if (key == "lambda") {
    train.adversarial_weight = to_double(key, value);
  } else if (key == "disc_steps") {
    train.discriminator_steps = to_count(key, value);
  } else if (key == "non_saturating") {
    train.non_saturating = to_bool(key, value);
  } else if (key == "sweep_cap") {
    c.experiment.sweep_subset_cap = to_count(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(CliConfig& config, std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    try {
      set_key(config, text::trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(CliConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path.string());
}

void CliConfig::validate() const {
  if (methods.empty()) throw ConfigError("no method selected");
  if (ratios.empty()) throw ConfigError("no label ratio selected");
  for (double r : ratios) {
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("label ratio must be in (0, 1]");
  }
  if (dataset.empty() && synthetic.empty()) {
    throw ConfigError("either a dataset manifest or a synthetic preset is required");
  }
  if (out.empty()) throw ConfigError("output directory is empty");
  if (experiment.runs == 0) throw ConfigError("runs must be at least 1");
  experiment.model.validate();
  experiment.train.validate();
}

std::string to_config_text(const CliConfig& c) {
  const auto& model = c.experiment.model;
  const auto& train = c.experiment.train;
  auto num = [](double x) { return text::format_exact(x); };
  auto cnt = [](std::size_t x) { return std::to_string(x); };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };

  std::ostringstream o;
  o << "seed = " << c.seed << '\n'
    << "synthetic = " << c.synthetic << '\n'
    << "dataset = " << c.dataset.string() << '\n'
    << "out = " << c.out.string() << '\n'
    << "checkpoint = " << c.checkpoint.string() << '\n'
    << "method = "
    << join(c.methods, [](harness::Method m) { return std::string(harness::to_string(m)); })
    << '\n'
    << "view = " << (c.view ? std::to_string(*c.view) : std::string("all")) << '\n'
    << "ratio = " << join(c.ratios, num) << '\n'
    << "validation = " << num(c.experiment.validation_fraction) << '\n'
    << "runs = " << c.experiment.runs << '\n'
    << "gen_hidden = " << join(model.generator_hidden, cnt) << '\n'
    << "disc_hidden = " << join(model.discriminator_hidden, cnt) << '\n'
    << "head = " << model::to_string(model.head) << '\n'
    << "final_activation = " << flag(model.final_activation) << '\n'
    << "dropout = " << num(model.dropout) << '\n'
    << "weight_decay = " << num(model.weight_decay) << '\n'
    << "epochs = " << train.max_epochs << '\n'
    << "gen_lr = " << num(train.generator_lr) << '\n'
    << "disc_lr = " << num(train.discriminator_lr) << '\n'
    << "patience = " << train.patience << '\n'
    << "lambda = " << num(train.adversarial_weight) << '\n'
    << "disc_steps = " << train.discriminator_steps << '\n'
    << "non_saturating = " << flag(train.non_saturating) << '\n'
    << "sweep_cap = " << c.experiment.sweep_subset_cap << '\n';
  return o.str();
}

harness::ExperimentSpec cell_spec(const CliConfig& config, harness::Method method,
                                  std::size_t view, double ratio) {
  harness::ExperimentSpec spec = config.experiment;
  spec.method = method;
  spec.view = view;
  spec.label_ratio = ratio;
  spec.base_seed = config.seed;
  return spec;
}

}  // namespace mgal::cli
