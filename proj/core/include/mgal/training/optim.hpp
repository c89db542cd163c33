#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgal/ndcore/matrix.hpp"

namespace mgal::training {

// Plain stochastic gradient descent, no momentum.
class Sgd {
 public:
  explicit Sgd(double lr) : lr_(lr) {}

  double learning_rate() const noexcept { return lr_; }
  // params[i] -= lr * grads[i]
  void step(std::span<nd::Matrix* const> params, std::span<const nd::Matrix> grads) const;

 private:
  double lr_;
};

// Adam with bias-corrected moments:
//   m = b1 m + (1 - b1) g,  v = b2 v + (1 - b2) g^2
//   p -= lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  double learning_rate() const noexcept { return lr_; }
  std::size_t steps() const noexcept { return t_; }
  const std::vector<nd::Matrix>& first_moments() const noexcept { return m_; }
  const std::vector<nd::Matrix>& second_moments() const noexcept { return v_; }

  // Moment buffers are created on the first call; later calls must pass the
  // same parameter list (same count and shapes).
  void step(std::span<nd::Matrix* const> params, std::span<const nd::Matrix> grads);

 private:
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  std::size_t t_ = 0;
  std::vector<nd::Matrix> m_;
  std::vector<nd::Matrix> v_;
};

}  // namespace mgal::training
