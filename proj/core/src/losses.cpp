#include "mgal/training/losses.hpp"

#include <string>
#include <vector>

#include "mgal/error.hpp"

namespace mgal::training {
namespace {

// n x m matrix with `weight` in column `col` and zeros elsewhere.
nd::Matrix column_mask(std::size_t rows, std::size_t cols, std::size_t col, double weight) {
  nd::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m(r, col) = weight;
  return m;
}

nd::Matrix complement_mask(std::size_t rows, std::size_t cols, std::size_t skip, double weight) {
  nd::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (c != skip) m(r, c) = weight;
  return m;
}

void check_outputs(std::span<const nd::Var> outputs) {
  const std::size_t m = outputs.size();
  if (m < 2) {
    throw ConfigError("adversarial loss needs at least 2 views, got " + std::to_string(m));
  }
  for (nd::Var o : outputs) {
    if (o.cols() != m) {
      throw DimensionError("discriminator output has " + std::to_string(o.cols()) +
                           " columns for " + std::to_string(m) + " views");
    }
  }
}

}  // namespace

nd::Var adversarial_loss(std::span<const nd::Var> disc_outputs) {
  check_outputs(disc_outputs);
  const std::size_t m = disc_outputs.size();
  nd::Tape& tape = *disc_outputs.front().tape();
  const double md = static_cast<double>(m);
  nd::Var total;
  for (std::size_t v = 0; v < m; ++v) {
    const nd::Var p = disc_outputs[v];
    const std::size_t n = p.rows();
    const double nd_ = static_cast<double>(n);
    // weights fold the 1/m, 1/(m-1) and mean-over-nodes factors
    nd::Var own = nd::sum(nd::mul(nd::log_clamped(p),
                                  tape.constant(column_mask(n, m, v, 1.0 / (md * nd_)))));
    nd::Var one_minus = nd::sub(tape.constant(nd::Matrix(n, m, 1.0)), p);
    nd::Var others = nd::sum(
        nd::mul(nd::log_clamped(one_minus),
                tape.constant(complement_mask(n, m, v, 1.0 / (md * (md - 1.0) * nd_)))));
    nd::Var term = nd::add(own, others);
    total = total.valid() ? nd::add(total, term) : term;
  }
  return total;
}

nd::Var non_saturating_generator_loss(std::span<const nd::Var> disc_outputs) {
  check_outputs(disc_outputs);
  const std::size_t m = disc_outputs.size();
  nd::Tape& tape = *disc_outputs.front().tape();
  const double md = static_cast<double>(m);
  nd::Var total;
  for (std::size_t v = 0; v < m; ++v) {
    const nd::Var p = disc_outputs[v];
    const std::size_t n = p.rows();
    nd::Var term = nd::sum(nd::mul(
        nd::log_clamped(p), tape.constant(complement_mask(
                                n, m, v, -1.0 / (md * (md - 1.0) * static_cast<double>(n))))));
    total = total.valid() ? nd::add(total, term) : term;
  }
  return total;
}

nd::Var semi_loss(nd::Var probabilities, std::span<const std::size_t> labels,
                  std::span<const std::size_t> labeled) {
  if (labeled.empty()) throw ConfigError("semi-supervised loss over an empty labeled set");
  const std::size_t c = probabilities.cols();
  nd::Matrix indicator(labeled.size(), c);
  for (std::size_t k = 0; k < labeled.size(); ++k) {
    if (labeled[k] >= labels.size()) throw IndexError("labeled index outside label list");
    const std::size_t y = labels[labeled[k]];
    if (y >= c) throw IndexError("label " + std::to_string(y) + " >= class count");
    indicator(k, y) = -1.0;
  }
  nd::Tape& tape = *probabilities.tape();
  nd::Var picked = nd::row_select(probabilities, labeled);
  return nd::sum(nd::mul(nd::log_clamped(picked), tape.constant(std::move(indicator))));
}

std::size_t argmax_row(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < row.size(); ++j)
    if (row[j] > row[best]) best = j;
  return best;
}

double evaluate_accuracy(const nd::Matrix& probabilities, std::span<const std::size_t> labels,
                         std::span<const std::size_t> indices) {
  if (indices.empty()) throw ConfigError("accuracy over an empty index set");
  std::size_t correct = 0;
  for (std::size_t i : indices) {
    if (i >= probabilities.rows() || i >= labels.size()) {
      throw IndexError("accuracy: index " + std::to_string(i) + " out of range");
    }
    if (argmax_row(probabilities.row(i)) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

}  // namespace mgal::training
