#include "mgal/training/optim.hpp"

#include <cmath>

#include "mgal/error.hpp"

namespace mgal::training {
namespace {

void check_pairs(std::span<nd::Matrix* const> params, std::span<const nd::Matrix> grads) {
  if (params.size() != grads.size()) {
    throw DimensionError("optimizer: " + std::to_string(params.size()) + " parameters, " +
                         std::to_string(grads.size()) + " gradients");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(grads[i])) {
      throw DimensionError("optimizer: parameter " + nd::shape_string(*params[i]) +
                           " vs gradient " + nd::shape_string(grads[i]));
    }
  }
}

}  // namespace

void Sgd::step(std::span<nd::Matrix* const> params, std::span<const nd::Matrix> grads) const {
  check_pairs(params, grads);
  for (std::size_t i = 0; i < params.size(); ++i) nd::axpy(-lr_, grads[i], *params[i]);
}

void Adam::step(std::span<nd::Matrix* const> params, std::span<const nd::Matrix> grads) {
  check_pairs(params, grads);
  if (m_.empty()) {
    for (const nd::Matrix* p : params) {
      m_.emplace_back(p->rows(), p->cols());
      v_.emplace_back(p->rows(), p->cols());
    }
  } else if (m_.size() != params.size()) {
    throw DimensionError("adam: parameter list changed between steps");
  }
  ++t_;
  const double t = static_cast<double>(t_);
  const double correction1 = 1.0 - std::pow(beta1_, t);
  const double correction2 = 1.0 - std::pow(beta2_, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!m_[i].same_shape(*params[i])) throw DimensionError("adam: parameter shape changed");
    auto p = params[i]->values();
    auto g = grads[i].values();
    auto m = m_[i].values();
    auto v = v_[i].values();
    for (std::size_t k = 0; k < p.size(); ++k) {
      m[k] = beta1_ * m[k] + (1.0 - beta1_) * g[k];
      v[k] = beta2_ * v[k] + (1.0 - beta2_) * g[k] * g[k];
      const double m_hat = m[k] / correction1;
      const double v_hat = v[k] / correction2;
      p[k] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
  }
}

}  // namespace mgal::training
