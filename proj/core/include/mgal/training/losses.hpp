#pragma once

#include <cstddef>
#include <span>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/tape.hpp"

namespace mgal::training {

// Cross-graph discrimination objective. disc_outputs[v] holds the
// discriminator's n x m probabilities for the representation built on view v:
//   (1/m) sum_v [ mean_x log D_v(z_v) + 1/(m-1) sum_{u != v} mean_x log(1 - D_u(z_v)) ]
// Always <= 0. Requires m >= 2.
nd::Var adversarial_loss(std::span<const nd::Var> disc_outputs);

// Non-saturating generator surrogate: minimizes
//   -(1/m) sum_v [ 1/(m-1) sum_{u != v} mean_x log D_u(z_v) ],
// i.e. rewards the generator for making each view look like the others.
nd::Var non_saturating_generator_loss(std::span<const nd::Var> disc_outputs);

// -sum_{i in labeled} log U[i, y_i], with U clamped away from 0.
nd::Var semi_loss(nd::Var probabilities, std::span<const std::size_t> labels,
                  std::span<const std::size_t> labeled);

// Fraction of `indices` whose row argmax (lowest index on ties) equals the label.
double evaluate_accuracy(const nd::Matrix& probabilities, std::span<const std::size_t> labels,
                         std::span<const std::size_t> indices);

std::size_t argmax_row(std::span<const double> row);

}  // namespace mgal::training
