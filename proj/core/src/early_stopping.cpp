#include "mgal/training/early_stopping.hpp"

#include "mgal/error.hpp"

namespace mgal::training {

EarlyStopping::EarlyStopping(std::size_t patience) : patience_(patience) {
  if (patience == 0) throw ConfigError("early stopping patience must be >= 1");
}

bool EarlyStopping::observe(double loss) {
  ++epoch_;
  if (loss < best_) {
    best_ = loss;
    best_epoch_ = epoch_;
    since_improvement_ = 0;
    return true;
  }
  ++since_improvement_;
  return false;
}

}  // namespace mgal::training
