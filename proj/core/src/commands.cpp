#include "mgal/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mgal/cli/dataset_io.hpp"
#include "mgal/error.hpp"
#include "mgal/graph/synthetic.hpp"
#include "mgal/harness/sweep.hpp"
#include "mgal/model/checkpoint.hpp"
#include "mgal/text.hpp"
#include "mgal/training/trainer.hpp"

namespace mgal::cli {
namespace fs = std::filesystem;
namespace {

template <typename F>
int guarded(std::ostream& err, std::string_view command, F&& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    err << "mgal " << command << ": " << e.what() << '\n';
    return 1;
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

void write_text(const fs::path& path, const std::string& content) {
  auto f = open_out(path);
  f << content;
  if (!f) throw IoError("failed writing " + path.string());
}

std::string pct(double fraction) { return text::format_fixed(100.0 * fraction, 4); }

struct Cell {
  harness::Method method;
  std::size_t view;
  double ratio;
};

std::string cell_tag(const Cell& cell) {
  std::string tag(harness::to_string(cell.method));
  if (cell.method == harness::Method::kGcnSingle) tag += "-v" + std::to_string(cell.view);
  return tag + "_ratio" + text::format_exact(cell.ratio);
}

std::vector<Cell> cells(const CliConfig& config, std::size_t num_views) {
  std::vector<Cell> out;
  for (double ratio : config.ratios) {
    for (auto method : config.methods) {
      if (method != harness::Method::kGcnSingle) {
        out.push_back({method, 0, ratio});
      } else if (config.view) {
        if (*config.view >= num_views) {
          throw ConfigError("view " + std::to_string(*config.view) + " out of range; dataset has " +
                            std::to_string(num_views) + " views");
        }
        out.push_back({method, *config.view, ratio});
      } else {
        for (std::size_t v = 0; v < num_views; ++v) out.push_back({method, v, ratio});
      }
    }
  }
  return out;
}

void write_curves(const fs::path& path, const training::TrainReport& r) {
  auto f = open_out(path);
  f << "epoch\tgenerator_loss\tsemi_loss\tadversarial_loss\tdiscriminator_loss"
       "\tdiscriminator_accuracy\tvalidation_loss\n";
  for (std::size_t e = 0; e < r.semi_loss.size(); ++e) {
    f << e + 1 << '\t' << text::format_exact(r.generator_loss[e]) << '\t'
      << text::format_exact(r.semi_loss[e]) << '\t' << text::format_exact(r.adversarial_loss[e])
      << '\t' << text::format_exact(r.discriminator_loss[e]) << '\t'
      << text::format_exact(r.discriminator_accuracy[e]) << '\t'
      << text::format_exact(r.validation_loss[e]) << '\n';
  }
}

void prepare_out(const CliConfig& config) {
  fs::create_directories(config.out);
  write_text(config.out / "config.txt", to_config_text(config));
}

// Checks the generator weights chain from the dataset's feature width.
void check_generator(const model::GeneratorParams& g, std::size_t feature_dim,
                     const fs::path& path) {
  if (g.weights.empty()) throw ValidationError(path.string() + ": checkpoint has no generator");
  if (g.weights.front().rows() != feature_dim) {
    throw ValidationError(path.string() + ": checkpoint generator expects " +
                          std::to_string(g.weights.front().rows()) +
                          " input features but the dataset has " + std::to_string(feature_dim));
  }
  for (std::size_t l = 1; l < g.weights.size(); ++l) {
    if (g.weights[l].rows() != g.weights[l - 1].cols()) {
      throw ValidationError(path.string() + ": generator layer " + std::to_string(l) +
                            " has inconsistent shape " + nd::shape_string(g.weights[l]));
    }
  }
}

}  // namespace

graph::MultiGraphDataset resolve_dataset(const CliConfig& config) {
  if (!config.dataset.empty()) return load_dataset(read_manifest(config.dataset));
  return graph::synth_multiview(graph::synthetic_preset(config.synthetic, config.seed));
}

int cmd_train(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "train", [&] {
    config.validate();
    const auto dataset = resolve_dataset(config);
    const auto plan = cells(config, dataset.num_views());
    prepare_out(config);
    fs::create_directories(config.out / "curves");
    fs::create_directories(config.out / "checkpoints");

    std::ostringstream table;
    table << "method\tview\tratio\truns\tmean\tstd";
    for (std::size_t r = 0; r < config.experiment.runs; ++r) table << "\trun" << r;
    table << "\tstopped_epochs\n";

    for (const auto& cell : plan) {
      const auto spec = cell_spec(config, cell.method, cell.view, cell.ratio);
      const auto result = harness::run_method(dataset, spec);
      const std::string tag = cell_tag(cell);
      for (std::size_t r = 0; r < spec.runs; ++r) {
        const std::string stem = tag + "_run" + std::to_string(r);
        write_curves(config.out / "curves" / (stem + ".tsv"), result.reports[r]);
        model::save_checkpoint(config.out / "checkpoints" / (stem + ".ckpt"), result.params[r]);
      }
      table << harness::to_string(cell.method) << '\t'
            << (cell.method == harness::Method::kGcnSingle ? std::to_string(cell.view) : "-")
            << '\t' << text::format_exact(cell.ratio) << '\t' << spec.runs << '\t'
            << pct(result.mean) << '\t' << pct(result.stddev);
      for (double a : result.accuracies) table << '\t' << pct(a);
      table << '\t';
      for (std::size_t r = 0; r < result.stopped_epochs.size(); ++r) {
        table << (r ? "," : "") << result.stopped_epochs[r];
      }
      table << '\n';
      out << tag << ": " << text::format_fixed(100.0 * result.mean, 2) << " +- "
          << text::format_fixed(100.0 * result.stddev, 2) << '\n';
    }
    write_text(config.out / "metrics.tsv", table.str());
  });
}

int cmd_sweep(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "sweep", [&] {
    config.validate();
    const auto dataset = resolve_dataset(config);
    if (dataset.num_views() < 2) {
      throw ConfigError("sweep needs a dataset with at least 2 views; this one has " +
                        std::to_string(dataset.num_views()));
    }
    prepare_out(config);

    std::ostringstream levels;
    std::ostringstream subsets;
    levels << "ratio\tsize\tmean\tsubsets_total\tsubsets_evaluated\tsampled\n";
    subsets << "ratio\tsize\tviews\trun\taccuracy\n";
    for (double ratio : config.ratios) {
      const auto spec = cell_spec(config, config.methods.front(), 0, ratio);
      const auto sweep = harness::graph_count_sweep(dataset, spec);
      for (const auto& level : sweep.levels) {
        levels << text::format_exact(ratio) << '\t' << level.size << '\t' << pct(level.mean)
               << '\t' << level.total_subsets << '\t' << level.subsets.size() << '\t'
               << (level.sampled ? "yes" : "no") << '\n';
        for (const auto& s : level.subsets) {
          std::string views;
          for (std::size_t i = 0; i < s.views.size(); ++i) {
            views += (i ? "+" : "") + std::to_string(s.views[i]);
          }
          for (std::size_t r = 0; r < s.accuracies.size(); ++r) {
            subsets << text::format_exact(ratio) << '\t' << level.size << '\t' << views << '\t'
                    << r << '\t' << pct(s.accuracies[r]) << '\n';
          }
        }
        out << "ratio " << text::format_exact(ratio) << " size " << level.size << ": "
            << text::format_fixed(100.0 * level.mean, 2) << '\n';
      }
    }
    write_text(config.out / "sweep.tsv", levels.str());
    write_text(config.out / "sweep_subsets.tsv", subsets.str());
  });
}

int cmd_export(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "export", [&] {
    if (config.checkpoint.empty()) throw ConfigError("export needs a checkpoint path");
    if (!fs::exists(config.checkpoint)) {
      throw IoError("checkpoint not found: " + config.checkpoint.string());
    }
    const auto params = model::load_checkpoint(config.checkpoint);
    const auto dataset = resolve_dataset(config);
    check_generator(params.generator, dataset.feature_dim(), config.checkpoint);

    model::ModelConfig model = config.experiment.model;
    model.generator_hidden.clear();
    for (const auto& w : params.generator.weights) model.generator_hidden.push_back(w.cols());
    model.head = model::HeadVariant::kFullyConnected;
    const auto prepared = training::prepare(dataset, model.head);
    const auto z = training::compute_embeddings(prepared, params.generator, model);

    fs::create_directories(config.out);
    const std::size_t k = model.representation_dim();
    auto header = [k](std::ostream& f, std::size_t view) {
      for (std::size_t j = 0; j < k; ++j) f << 'v' << view << "_z" << j << ',';
    };
    for (std::size_t v = 0; v < z.size(); ++v) {
      auto f = open_out(config.out / ("embeddings_view" + std::to_string(v) + ".csv"));
      header(f, v);
      f << "label\n";
      for (std::size_t i = 0; i < dataset.num_nodes(); ++i) {
        for (double x : z[v].row(i)) f << text::format_exact(x) << ',';
        f << dataset.labels[i] << '\n';
      }
    }
    auto f = open_out(config.out / "embeddings_concat.csv");
    for (std::size_t v = 0; v < z.size(); ++v) header(f, v);
    f << "label\n";
    for (std::size_t i = 0; i < dataset.num_nodes(); ++i) {
      for (const auto& zv : z) {
        for (double x : zv.row(i)) f << text::format_exact(x) << ',';
      }
      f << dataset.labels[i] << '\n';
    }
    out << "exported " << z.size() << " views of " << dataset.num_nodes() << " nodes to "
        << config.out.string() << '\n';
  });
}

int cmd_synth(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "synth", [&] {
    const auto dataset =
        graph::synth_multiview(graph::synthetic_preset(config.synthetic, config.seed));
    write_dataset(dataset, config.out);
    out << "wrote " << config.synthetic << " dataset (n=" << dataset.num_nodes()
        << ", m=" << dataset.num_views() << ") to " << config.out.string() << '\n';
  });
}

}  // namespace mgal::cli
