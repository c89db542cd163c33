#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "mgal/ndcore/matrix.hpp"
#include "mgal/ndcore/sparse.hpp"

namespace mgal::nd {

class Tape;

// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;

  Tape* tape() const noexcept { return tape_; }
  std::size_t id() const noexcept { return id_; }
  bool valid() const noexcept { return tape_ != nullptr; }

  const Matrix& value() const;
  const Matrix& grad() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Reverse-mode autodiff record over dense matrices. Nodes are appended in
// evaluation order, so the node list is always topologically sorted.
// Single owner; not thread-safe.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::size_t)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf whose gradient is tracked.
  Var parameter(Matrix value);
  // Leaf without gradient.
  Var constant(Matrix value);

  const Matrix& value(Var v) const;
  // Gradient of the last backward() call. Throws ContractError for
  // variables that do not require gradients.
  const Matrix& grad(Var v) const;
  bool requires_grad(Var v) const;

  // Seeds d(loss)/d(loss) = 1 and propagates to every reachable variable.
  // All gradient accumulators are reset first, so repeated calls agree.
  void backward(Var loss);

  std::size_t size() const noexcept { return nodes_.size(); }

  // When enabled, relu and clamped-log nodes record which side of their kink
  // each input element falls on. Used by the finite-difference checker.
  void set_record_kinks(bool on) noexcept { record_kinks_ = on; }
  const std::vector<std::uint8_t>& kink_signature() const noexcept { return kinks_; }

  // --- op-author interface -------------------------------------------------
  Var push(Matrix value, std::span<const Var> inputs, BackwardFn backward);
  bool needs_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  const Matrix& value_at(std::size_t id) const { return nodes_[id].value; }
  const Matrix& grad_at(std::size_t id) const { return nodes_[id].grad; }
  Matrix& grad_at(std::size_t id) { return nodes_[id].grad; }
  void record_kink(bool side) {
    if (record_kinks_) kinks_.push_back(side ? 1 : 0);
  }
  bool recording_kinks() const noexcept { return record_kinks_; }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    BackwardFn backward;
  };

  void check_owned(Var v) const;

  std::deque<Node> nodes_;
  bool record_kinks_ = false;
  std::vector<std::uint8_t> kinks_;
};

inline constexpr double kLogFloor = 1e-12;

Var matmul(Var a, Var b);
// Sparse operand is a constant; it must outlive the tape.
Var spmm(const CsrMatrix& s, Var b);
Var relu(Var a);
Var softmax_rows(Var a);
Var concat_cols(std::span<const Var> parts);
Var row_select(Var a, std::span<const std::size_t> indices);
Var scale(Var a, double alpha);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
// Adds a 1 x cols row vector to every row of a.
Var add_row_broadcast(Var a, Var row);
// log(max(x, floor)); gradient is zero where the clamp is active.
Var log_clamped(Var a, double floor = kLogFloor);
Var sum(Var a);
Var mean(Var a);

}  // namespace mgal::nd
