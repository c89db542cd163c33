#pragma once

#include <cstddef>
#include <limits>

namespace mgal::training {

// Tracks the best validation loss. A loss counts as an improvement only when
// strictly below the best so far; training should stop once
// epochs_since_improvement reaches patience.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);

  // Returns true when `loss` is a new best (caller snapshots parameters).
  bool observe(double loss);
  bool should_stop() const noexcept { return since_improvement_ >= patience_; }

  double best_loss() const noexcept { return best_; }
  std::size_t best_epoch() const noexcept { return best_epoch_; }
  std::size_t epochs_since_improvement() const noexcept { return since_improvement_; }
  std::size_t patience() const noexcept { return patience_; }

 private:
  std::size_t patience_;
  double best_ = std::numeric_limits<double>::infinity();
  std::size_t epoch_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t since_improvement_ = 0;
};

}  // namespace mgal::training
