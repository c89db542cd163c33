#include "mgal/cli/dataset_io.hpp"

#include <fstream>
#include <map>
#include <string>

#include "mgal/error.hpp"
#include "mgal/text.hpp"

namespace mgal::cli {
namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

bool skippable(std::string_view line) {
  line = text::trim(line);
  return line.empty() || line.front() == '#';
}

std::string where(const fs::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

}  // namespace

DatasetManifest read_manifest(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where(path, line_no) + ": expected key = value");
    kv[std::string(text::trim(std::string_view(line).substr(0, eq)))] =
        std::string(text::trim(std::string_view(line).substr(eq + 1)));
  }
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ValidationError(path.string() + ": missing '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const fs::path base = path.parent_path();
  auto resolve = [&](std::string_view p) {
    fs::path q{std::string(text::trim(p))};
    return q.is_absolute() ? q : base / q;
  };
  DatasetManifest m;
  m.features = resolve(take("features"));
  const std::string views = take("views");
  for (auto v : text::split(views, ",")) m.views.push_back(resolve(v));
  m.labels = resolve(take("labels"));
  m.n = text::parse_index(take("n"), "manifest n");
  m.d = text::parse_index(take("d"), "manifest d");
  m.m = text::parse_index(take("m"), "manifest m");
  m.c = text::parse_index(take("c"), "manifest c");
  if (!kv.empty()) throw ValidationError(path.string() + ": unknown key '" + kv.begin()->first + "'");
  if (m.views.empty()) throw ValidationError(path.string() + ": no views listed");
  return m;
}

void write_manifest(const fs::path& path, const DatasetManifest& m) {
  std::ofstream out = open_output(path);
  out << "features = " << m.features.generic_string() << '\n';
  out << "views = ";
  for (std::size_t v = 0; v < m.views.size(); ++v)
    out << (v ? ", " : "") << m.views[v].generic_string();
  out << '\n';
  out << "labels = " << m.labels.generic_string() << '\n';
  out << "n = " << m.n << "\nd = " << m.d << "\nm = " << m.m << "\nc = " << m.c << '\n';
}

nd::Matrix read_features(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto cells = text::split(line, ", \t\r");
    if (rows == 0) cols = cells.size();
    if (cells.size() != cols) {
      throw ValidationError(where(path, line_no) + ": " + std::to_string(cells.size()) +
                            " columns, expected " + std::to_string(cols));
    }
    for (auto c : cells) values.push_back(text::parse_double(c, where(path, line_no)));
    ++rows;
  }
  return nd::Matrix(rows, cols, std::move(values));
}

nd::CsrMatrix read_edge_list(const fs::path& path, std::size_t num_nodes) {
  std::ifstream in = open_input(path);
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto cells = text::split(line, ", \t\r");
    if (cells.size() != 2 && cells.size() != 3) {
      throw ValidationError(where(path, line_no) + ": expected 'i j [w]'");
    }
    const std::size_t i = text::parse_index(cells[0], where(path, line_no));
    const std::size_t j = text::parse_index(cells[1], where(path, line_no));
    const double w = cells.size() == 3 ? text::parse_double(cells[2], where(path, line_no)) : 1.0;
    if (i >= num_nodes || j >= num_nodes) {
      throw ValidationError(where(path, line_no) + ": node id outside [0, " +
                            std::to_string(num_nodes) + ")");
    }
    if (i == j) throw ValidationError(where(path, line_no) + ": self-loop on node " + std::to_string(i));
    if (!(w >= 0.0)) throw ValidationError(where(path, line_no) + ": negative edge weight");
    const auto key = std::minmax(i, j);
    auto [it, inserted] = edges.emplace(key, std::make_pair(w, line_no));
    if (!inserted && it->second.first != w) {
      throw ValidationError(where(path, line_no) + ": edge " + std::to_string(key.first) + "-" +
                            std::to_string(key.second) + " repeats line " +
                            std::to_string(it->second.second) + " with a different weight");
    }
  }
  std::vector<nd::Triplet> entries;
  entries.reserve(2 * edges.size());
  for (const auto& [key, value] : edges) {
    entries.push_back({key.first, key.second, value.first});
    entries.push_back({key.second, key.first, value.first});
  }
  return nd::CsrMatrix::from_triplets(num_nodes, num_nodes, std::move(entries));
}

std::vector<std::size_t> read_labels(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::size_t> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    labels.push_back(text::parse_index(line, where(path, line_no)));
  }
  return labels;
}

graph::MultiGraphDataset load_dataset(const DatasetManifest& manifest) {
  graph::MultiGraphDataset ds;
  ds.features = read_features(manifest.features);
  if (ds.features.rows() != manifest.n || ds.features.cols() != manifest.d) {
    throw ValidationError(manifest.features.string() + ": features are " +
                          nd::shape_string(ds.features) + ", manifest declares " +
                          nd::shape_string(manifest.n, manifest.d));
  }
  if (manifest.views.size() != manifest.m) {
    throw ValidationError("manifest lists " + std::to_string(manifest.views.size()) +
                          " views but declares m = " + std::to_string(manifest.m));
  }
  for (const auto& v : manifest.views) ds.views.push_back(read_edge_list(v, manifest.n));
  ds.labels = read_labels(manifest.labels);
  if (ds.labels.size() != manifest.n) {
    throw ValidationError(manifest.labels.string() + ": " + std::to_string(ds.labels.size()) +
                          " labels, manifest declares n = " + std::to_string(manifest.n));
  }
  ds.num_classes = manifest.c;
  ds.validate();
  return ds;
}

DatasetManifest write_dataset(const graph::MultiGraphDataset& ds, const fs::path& dir) {
  fs::create_directories(dir);
  DatasetManifest m;
  m.features = "features.csv";
  m.labels = "labels.txt";
  m.n = ds.num_nodes();
  m.d = ds.feature_dim();
  m.m = ds.num_views();
  m.c = ds.num_classes;
  {
    std::ofstream out = open_output(dir / m.features);
    for (std::size_t i = 0; i < ds.num_nodes(); ++i) {
      for (std::size_t j = 0; j < ds.feature_dim(); ++j)
        out << (j ? "," : "") << text::format_exact(ds.features(i, j));
      out << '\n';
    }
  }
  for (std::size_t v = 0; v < ds.num_views(); ++v) {
    const fs::path name = "view" + std::to_string(v) + ".edges";
    m.views.push_back(name);
    std::ofstream out = open_output(dir / name);
    const auto& a = ds.views[v];
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t p = a.row_ptr()[r]; p < a.row_ptr()[r + 1]; ++p) {
        const std::size_t c = a.col_idx()[p];
        if (c <= r) continue;
        out << r << ' ' << c;
        if (a.values()[p] != 1.0) out << ' ' << text::format_exact(a.values()[p]);
        out << '\n';
      }
    }
  }
  {
    std::ofstream out = open_output(dir / m.labels);
    for (std::size_t y : ds.labels) out << y << '\n';
  }
  write_manifest(dir / "manifest.txt", m);
  return m;
}

}  // namespace mgal::cli
