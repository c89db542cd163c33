#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "mgal/graph/dataset.hpp"
#include "mgal/ndcore/sparse.hpp"

namespace mgal::cli {

// On-disk dataset description, stored as `key = value` lines:
//   features = features.csv
//   views = view0.edges, view1.edges
//   labels = labels.txt
//   n = 400
//   d = 4
//   m = 2
//   c = 4
// Relative paths resolve against the manifest's directory.
struct DatasetManifest {
  std::filesystem::path features;
  std::vector<std::filesystem::path> views;
  std::filesystem::path labels;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t c = 0;
};

DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

// Features: one node per line, values separated by commas, tabs or spaces.
nd::Matrix read_features(const std::filesystem::path& path);
// Edge list "i j [w]" with 0-based node ids. Both orientations of an edge
// collapse into one undirected edge; self-loops are rejected with their line number.
nd::CsrMatrix read_edge_list(const std::filesystem::path& path, std::size_t num_nodes);
// One integer class id per line.
std::vector<std::size_t> read_labels(const std::filesystem::path& path);

graph::MultiGraphDataset load_dataset(const DatasetManifest& manifest);

// Writes features.csv, view<v>.edges, labels.txt and manifest.txt into `dir`
// and returns the manifest (with relative paths).
DatasetManifest write_dataset(const graph::MultiGraphDataset& dataset,
                              const std::filesystem::path& dir);

}  // namespace mgal::cli
