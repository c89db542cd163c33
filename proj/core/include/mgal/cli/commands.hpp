#pragma once

#include <iosfwd>

#include "mgal/cli/config.hpp"
#include "mgal/graph/dataset.hpp"

namespace mgal::cli {

// The manifest named by config.dataset, or else the synthetic preset seeded
// with config.seed.
graph::MultiGraphDataset resolve_dataset(const CliConfig& config);

// Each command returns a process exit status. Progress goes to `out`;
// errors are caught and reported on `err`.
//
// train:  config.txt, metrics.tsv, curves/<cell>_run<r>.tsv, checkpoints/<cell>_run<r>.ckpt
// sweep:  config.txt, sweep.tsv, sweep_subsets.tsv
// export: embeddings_view<v>.csv, embeddings_concat.csv
// synth:  manifest.txt and the files it names
int cmd_train(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_export(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mgal::cli
