#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/tape.hpp"

namespace mgal::nd {

// Builds a scalar loss on `tape` from leaf variables bound to the parameters.
using LossBuilder = std::function<Var(Tape& tape, std::span<const Var> params)>;

struct GradCheckOptions {
  double step = 1e-6;
  double tolerance = 1e-5;
  // Entries whose +/- kink_margin perturbations flip a relu or log-clamp
  // decision are treated as sitting on a kink and skipped.
  double kink_margin = 1e-4;
  // Relative error is |ad - fd| / max(|ad|, |fd|, scale_floor).
  double scale_floor = 1e-3;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_at_kink = 0;
  std::size_t worst_param = 0;
  std::size_t worst_entry = 0;
  bool passed = false;
};

// Compares tape gradients of `build` against central differences over every
// entry of every parameter. Throws NumericError when a probe produces a
// non-finite loss.
GradCheckReport finite_diff_check(const LossBuilder& build, std::span<const Matrix> params,
                                  const GradCheckOptions& options = {});

}  // namespace mgal::nd
