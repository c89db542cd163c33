#include "mgal/model/checkpoint.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "mgal/error.hpp"
#include "mgal/text.hpp"

namespace mgal::model {
namespace {
constexpr std::string_view kMagic = "mgal-checkpoint 1";
}

void write_checkpoint(std::ostream& out, const NamedMatrices& params) {
  out << kMagic << '\n';
  for (const auto& [name, m] : params) {
    out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c > 0) out << ' ';
        out << text::format_exact(m(r, c));
      }
      out << '\n';
    }
  }
}

NamedMatrices read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != kMagic) {
    throw ValidationError("checkpoint: missing '" + std::string(kMagic) + "' header");
  }
  NamedMatrices out;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    const auto head = text::split(line, " \t");
    if (head.size() != 3) throw ValidationError("checkpoint: malformed header '" + line + "'");
    const std::string name(head[0]);
    const std::size_t rows = text::parse_index(head[1], "checkpoint rows");
    const std::size_t cols = text::parse_index(head[2], "checkpoint cols");
    nd::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) throw ValidationError("checkpoint: truncated '" + name + "'");
      const auto cells = text::split(line, " \t");
      if (cells.size() != cols) {
        throw ValidationError("checkpoint: row " + std::to_string(r) + " of '" + name + "' has " +
                              std::to_string(cells.size()) + " values, expected " +
                              std::to_string(cols));
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = text::parse_double(cells[c], name);
    }
    out.emplace_back(name, std::move(m));
  }
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  write_checkpoint(out, to_named(params));
  if (!out) throw IoError("failed writing checkpoint " + path.string());
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  return from_named(read_checkpoint(in));
}

}  // namespace mgal::model
