#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgal/cli/commands.hpp"
#include "mgal/cli/config.hpp"
#include "mgal/cli/dataset_io.hpp"
#include "mgal/error.hpp"
#include "mgal/graph/ops.hpp"
#include "mgal/graph/synthetic.hpp"
#include "mgal/model/checkpoint.hpp"
#include "mgal/text.hpp"
#include "mgal/training/trainer.hpp"
#include "support.hpp"

using namespace mgal;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("mgal_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream(p) << content;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    for (auto tok : text::split(line, ",")) row.emplace_back(tok);
    rows.push_back(row);
  }
  return rows;
}

cli::CliConfig quick_config(const fs::path& out) {
  cli::CliConfig c;
  c.synthetic = "small";
  c.seed = 7;
  c.out = out;
  c.experiment.runs = 2;
  c.experiment.train.max_epochs = 40;
  return c;
}

}  // namespace

TEST(Config, SetKeyParsesValues) {
  cli::CliConfig c;
  cli::set_key(c, "method", "gcn, mgl,mgal");
  ASSERT_EQ(c.methods.size(), 3u);
  EXPECT_EQ(c.methods[1], harness::Method::kMgl);
  cli::set_key(c, "ratio", "0.1,0.3");
  EXPECT_EQ(c.ratios, (std::vector<double>{0.1, 0.3}));
  cli::set_key(c, "lambda", "2.5");
  EXPECT_EQ(c.experiment.train.adversarial_weight, 2.5);
  cli::set_key(c, "head", "gconv");
  EXPECT_EQ(c.experiment.model.head, model::HeadVariant::kGraphConv);
  cli::set_key(c, "gen_hidden", "32,8");
  EXPECT_EQ(c.experiment.model.generator_hidden, (std::vector<std::size_t>{32, 8}));
  cli::set_key(c, "view", "1");
  EXPECT_EQ(c.view, std::optional<std::size_t>(1));
  cli::set_key(c, "view", "all");
  EXPECT_FALSE(c.view.has_value());
  cli::set_key(c, "non_saturating", "true");
  EXPECT_TRUE(c.experiment.train.non_saturating);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  cli::CliConfig c;
  EXPECT_THROW(cli::set_key(c, "learning_rate", "1"), ConfigError);
  EXPECT_THROW(cli::set_key(c, "method", "gat"), ConfigError);
  EXPECT_THROW(cli::set_key(c, "runs", "-1"), ConfigError);
  EXPECT_THROW(cli::set_key(c, "head", "per-view"), ConfigError);
  EXPECT_THROW(cli::set_key(c, "final_activation", "maybe"), ConfigError);
  EXPECT_THROW(cli::apply_config_text(c, "runs 5\n", "inline"), ConfigError);
  try {
    cli::apply_config_text(c, "# comment\nruns = 3\nbogus = 1\n", "cfg.txt");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.txt:3"), std::string::npos) << e.what();
  }
}

TEST(Config, SnapshotRoundTrips) {
  cli::CliConfig c;
  cli::apply_config_text(c,
                         "seed = 11\nmethod = gcn,mgal\nratio = 0.2\nlambda = 0.3\n"
                         "disc_lr = 0.02\nview = 2\nepochs = 123\ndropout = 0.1\n",
                         "inline");
  const std::string snap = cli::to_config_text(c);
  cli::CliConfig d;
  cli::apply_config_text(d, snap, "snapshot");
  EXPECT_EQ(cli::to_config_text(d), snap);
  EXPECT_EQ(d.seed, 11u);
  EXPECT_EQ(d.view, std::optional<std::size_t>(2));
  EXPECT_EQ(d.experiment.train.discriminator_lr, 0.02);
  for (auto key : cli::config_keys())
    EXPECT_NE(snap.find(std::string(key) + " = "), std::string::npos) << key;
}

TEST(Config, CellSpecCarriesSeedAndCell) {
  cli::CliConfig c;
  c.seed = 5;
  auto spec = cli::cell_spec(c, harness::Method::kGcnSingle, 2, 0.3);
  EXPECT_EQ(spec.base_seed, 5u);
  EXPECT_EQ(spec.view, 2u);
  EXPECT_EQ(spec.label_ratio, 0.3);
  EXPECT_EQ(spec.method, harness::Method::kGcnSingle);
}

TEST(DatasetIo, TwoNodeFixture) {
  TempDir dir;
  write_file(dir / "f.csv", "1,0\n0,1\n");
  write_file(dir / "v.edges", "0 1\n");
  write_file(dir / "l.txt", "0\n1\n");
  write_file(dir / "m.txt", "features = f.csv\nviews = v.edges\nlabels = l.txt\nn = 2\nd = 2\nm = 1\nc = 2\n");
  auto ds = cli::load_dataset(cli::read_manifest(dir / "m.txt"));
  EXPECT_EQ(ds.num_nodes(), 2u);
  EXPECT_EQ(ds.feature_dim(), 2u);
  EXPECT_EQ(ds.num_views(), 1u);
  EXPECT_EQ(ds.views[0].to_dense(), (nd::Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(ds.features, (nd::Matrix{{1, 0}, {0, 1}}));
}

TEST(DatasetIo, DuplicateOrientationsCollapse) {
  TempDir dir;
  write_file(dir / "v.edges", "0 1\n1 0\n# comment\n\n1 2 0.5\n");
  auto a = cli::read_edge_list(dir / "v.edges", 3);
  EXPECT_EQ(a.nnz(), 4u);
  EXPECT_EQ(a.at(0, 1), 1.0);
  EXPECT_EQ(a.at(2, 1), 0.5);
  EXPECT_TRUE(a.is_symmetric(0.0));
}

TEST(DatasetIo, SelfLoopReportsLine) {
  TempDir dir;
  write_file(dir / "v.edges", "0 1\n2 2\n");
  try {
    cli::read_edge_list(dir / "v.edges", 3);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
}

TEST(DatasetIo, Errors) {
  TempDir dir;
  write_file(dir / "v.edges", "0 5\n");
  EXPECT_THROW(cli::read_edge_list(dir / "v.edges", 3), ValidationError);
  write_file(dir / "w.edges", "0 1 -1\n");
  EXPECT_THROW(cli::read_edge_list(dir / "w.edges", 3), ValidationError);
  write_file(dir / "x.edges", "0 1 1\n1 0 2\n");
  EXPECT_THROW(cli::read_edge_list(dir / "x.edges", 3), ValidationError);
  try {
    cli::read_features(dir / "missing.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.csv"), std::string::npos);
  }
  write_file(dir / "f.csv", "1,0\n0\n");
  EXPECT_THROW(cli::read_features(dir / "f.csv"), ValidationError);
}

TEST(DatasetIo, DeclaredDimensionsAreChecked) {
  TempDir dir;
  write_file(dir / "f.csv", "1,0\n0,1\n");
  write_file(dir / "v.edges", "0 1\n");
  write_file(dir / "l.txt", "0\n1\n");
  write_file(dir / "m.txt", "features = f.csv\nviews = v.edges\nlabels = l.txt\nn = 3\nd = 2\nm = 1\nc = 2\n");
  try {
    cli::load_dataset(cli::read_manifest(dir / "m.txt"));
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('3'), std::string::npos) << msg;
    EXPECT_NE(msg.find('2'), std::string::npos) << msg;
  }
}

TEST(DatasetIo, WriteThenLoadIsIdentity) {
  TempDir dir;
  auto ds = graph::synth_multiview(graph::synthetic_preset("small", 3));
  cli::write_dataset(ds, dir.path());
  auto back = cli::load_dataset(cli::read_manifest(dir / "manifest.txt"));
  EXPECT_EQ(back.features, ds.features);
  EXPECT_EQ(back.views, ds.views);
  EXPECT_EQ(back.labels, ds.labels);
  EXPECT_EQ(back.num_classes, ds.num_classes);
}

TEST(Commands, TrainWritesArtifactsDeterministically) {
  TempDir dir;
  auto c = quick_config(dir / "a");
  c.methods = {harness::Method::kGcnSingle, harness::Method::kMgal};
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_train(c, out, err), 0) << err.str();
  for (auto f : {"config.txt", "metrics.tsv", "curves/mgal_ratio0.1_run1.tsv",
                 "checkpoints/gcn-v1_ratio0.1_run0.ckpt"})
    EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;
  const auto metrics = read_file(dir / "a" / "metrics.tsv");
  EXPECT_EQ(std::count(metrics.begin(), metrics.end(), '\n'), 4);  // header, gcn v0, gcn v1, mgal

  // the snapshot alone reproduces the run
  cli::CliConfig again;
  cli::apply_config_file(again, dir / "a" / "config.txt");
  again.out = dir / "b";
  ASSERT_EQ(cli::cmd_train(again, out, err), 0) << err.str();
  EXPECT_EQ(read_file(dir / "b" / "metrics.tsv"), metrics);
}

TEST(Commands, CurvesHaveOneRowPerEpoch) {
  TempDir dir;
  auto c = quick_config(dir.path());
  c.experiment.runs = 1;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_train(c, out, err), 0) << err.str();
  auto ckpt = model::load_checkpoint(dir / "checkpoints" / "mgal_ratio0.1_run0.ckpt");
  std::ifstream curves(dir / "curves" / "mgal_ratio0.1_run0.tsv");
  std::string line;
  std::size_t rows = 0;
  while (std::getline(curves, line)) ++rows;
  EXPECT_GT(rows, 1u);
  EXPECT_LE(rows, 41u);
  EXPECT_EQ(ckpt.generator.weights.size(), 2u);
}

TEST(Commands, TrainRejectsOutOfRangeView) {
  TempDir dir;
  auto c = quick_config(dir.path());
  c.methods = {harness::Method::kGcnSingle};
  c.view = 5;
  std::ostringstream out, err;
  EXPECT_NE(cli::cmd_train(c, out, err), 0);
  EXPECT_NE(err.str().find("view 5"), std::string::npos) << err.str();
}

TEST(Commands, SweepTables) {
  TempDir dir;
  auto c = quick_config(dir.path());
  c.experiment.runs = 1;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_sweep(c, out, err), 0) << err.str();
  auto levels = read_file(dir / "sweep.tsv");
  EXPECT_NE(levels.find("0.1\t1\t"), std::string::npos);
  EXPECT_NE(levels.find("0.1\t2\t"), std::string::npos);
  auto subsets = read_file(dir / "sweep_subsets.tsv");
  EXPECT_NE(subsets.find("\t0+1\t"), std::string::npos);
  EXPECT_EQ(std::count(subsets.begin(), subsets.end(), '\n'), 4);  // header + 2 singles + 1 pair
}

TEST(Commands, SweepOnOneViewFails) {
  TempDir dir;
  auto ds = graph::synth_multiview(graph::synthetic_preset("small", 1));
  std::vector<std::size_t> v0{0};
  cli::write_dataset(ds.select_views(v0), dir / "data");
  auto c = quick_config(dir / "out");
  c.dataset = dir / "data" / "manifest.txt";
  std::ostringstream out, err;
  EXPECT_NE(cli::cmd_sweep(c, out, err), 0);
  EXPECT_NE(err.str().find("at least 2 views"), std::string::npos) << err.str();
}

TEST(Commands, ExportShapesAndValues) {
  TempDir dir;
  graph::MultiGraphDataset ds;
  nd::Rng rng(1);
  ds.features = mgal::testing::random_matrix(10, 3, rng);
  ds.views = {mgal::testing::random_graph(10, 0.3, rng), mgal::testing::random_graph(10, 0.3, rng)};
  ds.labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  ds.num_classes = 2;
  cli::write_dataset(ds, dir / "data");
  const model::ModelConfig mc;
  auto params = model::init_model(3, 2, 2, mc, 4);
  model::save_checkpoint(dir / "p.ckpt", params);

  cli::CliConfig c;
  c.dataset = dir / "data" / "manifest.txt";
  c.checkpoint = dir / "p.ckpt";
  c.out = dir / "emb";
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_export(c, out, err), 0) << err.str();

  auto data = training::prepare(ds, model::HeadVariant::kFullyConnected);
  auto z = training::compute_embeddings(data, params.generator, mc);
  for (std::size_t v = 0; v < 2; ++v) {
    auto rows = read_csv(dir / "emb" / ("embeddings_view" + std::to_string(v) + ".csv"));
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0][0], "v" + std::to_string(v) + "_z0");
    EXPECT_EQ(rows[0].back(), "label");
    for (std::size_t i = 0; i < 10; ++i) {
      ASSERT_EQ(rows[i + 1].size(), 17u);
      for (std::size_t j = 0; j < 16; ++j)
        EXPECT_EQ(text::parse_double(rows[i + 1][j], "z"), z[v](i, j));
      EXPECT_EQ(rows[i + 1][16], std::to_string(ds.labels[i]));
    }
  }
  auto concat = read_csv(dir / "emb" / "embeddings_concat.csv");
  ASSERT_EQ(concat.size(), 11u);
  for (const auto& row : concat) EXPECT_EQ(row.size(), 33u);
  EXPECT_EQ(concat[0][16], "v1_z0");
}

TEST(Commands, ExportErrors) {
  TempDir dir;
  cli::CliConfig c;
  c.synthetic = "small";
  c.checkpoint = dir / "nope.ckpt";
  c.out = dir / "emb";
  std::ostringstream out, err;
  EXPECT_NE(cli::cmd_export(c, out, err), 0);
  EXPECT_NE(err.str().find("nope.ckpt"), std::string::npos) << err.str();

  model::save_checkpoint(dir / "wide.ckpt", model::init_model(7, 2, 3, {}, 0));
  c.checkpoint = dir / "wide.ckpt";
  std::ostringstream err2;
  EXPECT_NE(cli::cmd_export(c, out, err2), 0);
  EXPECT_NE(err2.str().find("7 input features"), std::string::npos) << err2.str();
}

TEST(Commands, SynthWritesLoadableDataset) {
  TempDir dir;
  cli::CliConfig c;
  c.synthetic = "small";
  c.seed = 3;
  c.out = dir.path();
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_synth(c, out, err), 0) << err.str();
  auto ds = cli::load_dataset(cli::read_manifest(dir / "manifest.txt"));
  auto direct = graph::synth_multiview(graph::synthetic_preset("small", 3));
  EXPECT_EQ(ds.views, direct.views);
  EXPECT_EQ(ds.features, direct.features);
}
