#include "mgal/ndcore/tape.hpp"

#include <algorithm>
#include <cmath>

#include "mgal/error.hpp"

namespace mgal::nd {

const Matrix& Var::value() const {
  if (tape_ == nullptr) throw ContractError("value() on an unbound Var");
  return tape_->value(*this);
}

const Matrix& Var::grad() const {
  if (tape_ == nullptr) throw ContractError("grad() on an unbound Var");
  return tape_->grad(*this);
}

void Tape::check_owned(Var v) const {
  if (v.tape_ != this || v.id_ >= nodes_.size()) {
    throw ContractError("variable does not belong to this tape");
  }
}

Var Tape::parameter(Matrix value) {
  nodes_.push_back(Node{std::move(value), Matrix{}, true, nullptr});
  return Var(this, nodes_.size() - 1);
}

Var Tape::constant(Matrix value) {
  nodes_.push_back(Node{std::move(value), Matrix{}, false, nullptr});
  return Var(this, nodes_.size() - 1);
}

Var Tape::push(Matrix value, std::span<const Var> inputs, BackwardFn backward) {
  bool tracked = false;
  for (Var in : inputs) {
    check_owned(in);
    tracked = tracked || nodes_[in.id_].requires_grad;
  }
  nodes_.push_back(Node{std::move(value), Matrix{}, tracked, tracked ? std::move(backward) : nullptr});
  return Var(this, nodes_.size() - 1);
}

const Matrix& Tape::value(Var v) const {
  check_owned(v);
  return nodes_[v.id_].value;
}

const Matrix& Tape::grad(Var v) const {
  check_owned(v);
  const Node& node = nodes_[v.id_];
  if (!node.requires_grad) throw ContractError("gradient requested for a constant");
  return node.grad;
}

bool Tape::requires_grad(Var v) const {
  check_owned(v);
  return nodes_[v.id_].requires_grad;
}

void Tape::backward(Var loss) {
  check_owned(loss);
  const Matrix& lv = nodes_[loss.id_].value;
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw ContractError("backward: loss must be 1x1, got " + shape_string(lv));
  }
  for (Node& node : nodes_) {
    if (node.requires_grad) {
      node.grad = Matrix(node.value.rows(), node.value.cols());
    }
  }
  if (!nodes_[loss.id_].requires_grad) return;
  nodes_[loss.id_].grad(0, 0) = 1.0;
  for (std::size_t i = loss.id_ + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (node.requires_grad && node.backward) node.backward(*this, i);
  }
}

namespace {

Tape& common_tape(std::initializer_list<Var> vars) {
  Tape* tape = nullptr;
  for (Var v : vars) {
    if (!v.valid()) throw ContractError("unbound Var passed to a tape operation");
    if (tape == nullptr) tape = v.tape();
    if (v.tape() != tape) throw ContractError("operands live on different tapes");
  }
  return *tape;
}

void accumulate(Tape& t, std::size_t id, const Matrix& g) {
  if (t.needs_grad(id)) axpy(1.0, g, t.grad_at(id));
}

void require_same_shape(const char* op, const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(op) + ": " + shape_string(a) + " vs " + shape_string(b));
  }
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& t = common_tape({a, b});
  Matrix out = matmul(a.value(), b.value());
  const std::size_t ia = a.id(), ib = b.id();
  const Var inputs[] = {a, b};
  return t.push(std::move(out), inputs, [ia, ib](Tape& tp, std::size_t self) {
    const Matrix& g = tp.grad_at(self);
    if (tp.needs_grad(ia)) accumulate(tp, ia, matmul_nt(g, tp.value_at(ib)));
    if (tp.needs_grad(ib)) accumulate(tp, ib, matmul_tn(tp.value_at(ia), g));
  });
}

Var spmm(const CsrMatrix& s, Var b) {
  Tape& t = common_tape({b});
  Matrix out = spmm(s, b.value());
  const std::size_t ib = b.id();
  const CsrMatrix* sp = &s;
  const Var inputs[] = {b};
  return t.push(std::move(out), inputs, [sp, ib](Tape& tp, std::size_t self) {
    accumulate(tp, ib, spmm_tn(*sp, tp.grad_at(self)));
  });
}

Var relu(Var a) {
  Tape& t = common_tape({a});
  Matrix out = a.value();
  for (double& x : out.values()) {
    t.record_kink(x > 0.0);
    if (!(x > 0.0)) x = 0.0;
  }
  const std::size_t ia = a.id();
  const Var inputs[] = {a};
  return t.push(std::move(out), inputs, [ia](Tape& tp, std::size_t self) {
    Matrix g = tp.grad_at(self);
    const auto x = tp.value_at(ia).values();
    auto gv = g.values();
    for (std::size_t i = 0; i < gv.size(); ++i)
      if (!(x[i] > 0.0)) gv[i] = 0.0;
    accumulate(tp, ia, g);
  });
}

Var softmax_rows(Var a) {
  Tape& t = common_tape({a});
  Matrix out = a.value();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    const double mx = *std::max_element(row.begin(), row.end());
    double total = 0.0;
    for (double& x : row) {
      x = std::exp(x - mx);
      total += x;
    }
    for (double& x : row) x /= total;
  }
  const std::size_t ia = a.id();
  const Var inputs[] = {a};
  return t.push(std::move(out), inputs, [ia](Tape& tp, std::size_t self) {
    const Matrix& y = tp.value_at(self);
    const Matrix& g = tp.grad_at(self);
    Matrix dx(y.rows(), y.cols());
    for (std::size_t r = 0; r < y.rows(); ++r) {
      const auto yr = y.row(r);
      const auto gr = g.row(r);
      double dot = 0.0;
      for (std::size_t j = 0; j < yr.size(); ++j) dot += yr[j] * gr[j];
      auto dr = dx.row(r);
      for (std::size_t j = 0; j < yr.size(); ++j) dr[j] = yr[j] * (gr[j] - dot);
    }
    accumulate(tp, ia, dx);
  });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw ContractError("concat_cols: no operands");
  Tape* tape = parts.front().tape();
  if (tape == nullptr) throw ContractError("unbound Var passed to concat_cols");
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  std::vector<std::size_t> ids;
  std::vector<std::size_t> widths;
  for (Var p : parts) {
    if (p.tape() != tape) throw ContractError("operands live on different tapes");
    if (p.rows() != rows) {
      throw DimensionError("concat_cols: row count " + std::to_string(p.rows()) + " vs " +
                           std::to_string(rows));
    }
    ids.push_back(p.id());
    widths.push_back(p.cols());
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::size_t offset = 0;
  for (Var p : parts) {
    const Matrix& v = p.value();
    for (std::size_t r = 0; r < rows; ++r)
      std::copy(v.row(r).begin(), v.row(r).end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(offset));
    offset += v.cols();
  }
  return tape->push(std::move(out), parts,
                    [ids = std::move(ids), widths = std::move(widths)](Tape& tp, std::size_t self) {
                      const Matrix& g = tp.grad_at(self);
                      std::size_t off = 0;
                      for (std::size_t k = 0; k < ids.size(); ++k) {
                        if (tp.needs_grad(ids[k])) {
                          Matrix& dst = tp.grad_at(ids[k]);
                          for (std::size_t r = 0; r < g.rows(); ++r)
                            for (std::size_t j = 0; j < widths[k]; ++j) dst(r, j) += g(r, off + j);
                        }
                        off += widths[k];
                      }
                    });
}

Var row_select(Var a, std::span<const std::size_t> indices) {
  Tape& t = common_tape({a});
  const Matrix& src = a.value();
  Matrix out(indices.size(), src.cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= src.rows()) {
      throw IndexError("row_select: index " + std::to_string(indices[k]) + " >= " +
                       std::to_string(src.rows()) + " rows");
    }
    std::copy(src.row(indices[k]).begin(), src.row(indices[k]).end(), out.row(k).begin());
  }
  const std::size_t ia = a.id();
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  const Var inputs[] = {a};
  return t.push(std::move(out), inputs, [ia, idx = std::move(idx)](Tape& tp, std::size_t self) {
    const Matrix& g = tp.grad_at(self);
    Matrix& dst = tp.grad_at(ia);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < g.cols(); ++j) dst(idx[k], j) += g(k, j);
  });
}

Var scale(Var a, double alpha) {
  Tape& t = common_tape({a});
  Matrix out = a.value();
  for (double& x : out.values()) x *= alpha;
  const std::size_t ia = a.id();
  const Var inputs[] = {a};
  return t.push(std::move(out), inputs, [ia, alpha](Tape& tp, std::size_t self) {
    axpy(alpha, tp.grad_at(self), tp.grad_at(ia));
  });
}

Var add(Var a, Var b) {
  Tape& t = common_tape({a, b});
  require_same_shape("add", a.value(), b.value());
  Matrix out = a.value();
  axpy(1.0, b.value(), out);
  const std::size_t ia = a.id(), ib = b.id();
  const Var inputs[] = {a, b};
  return t.push(std::move(out), inputs, [ia, ib](Tape& tp, std::size_t self) {
    accumulate(tp, ia, tp.grad_at(self));
    accumulate(tp, ib, tp.grad_at(self));
  });
}

Var sub(Var a, Var b) {
  Tape& t = common_tape({a, b});
  require_same_shape("sub", a.value(), b.value());
  Matrix out = a.value();
  axpy(-1.0, b.value(), out);
  const std::size_t ia = a.id(), ib = b.id();
  const Var inputs[] = {a, b};
  return t.push(std::move(out), inputs, [ia, ib](Tape& tp, std::size_t self) {
    accumulate(tp, ia, tp.grad_at(self));
    if (tp.needs_grad(ib)) axpy(-1.0, tp.grad_at(self), tp.grad_at(ib));
  });
}

Var mul(Var a, Var b) {
  Tape& t = common_tape({a, b});
  require_same_shape("mul", a.value(), b.value());
  Matrix out = a.value();
  {
    auto o = out.values();
    const auto bv = b.value().values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bv[i];
  }
  const std::size_t ia = a.id(), ib = b.id();
  const Var inputs[] = {a, b};
  return t.push(std::move(out), inputs, [ia, ib](Tape& tp, std::size_t self) {
    const auto g = tp.grad_at(self).values();
    if (tp.needs_grad(ia)) {
      auto dst = tp.grad_at(ia).values();
      const auto bv = tp.value_at(ib).values();
      for (std::size_t i = 0; i < g.size(); ++i) dst[i] += g[i] * bv[i];
    }
    if (tp.needs_grad(ib)) {
      auto dst = tp.grad_at(ib).values();
      const auto av = tp.value_at(ia).values();
      for (std::size_t i = 0; i < g.size(); ++i) dst[i] += g[i] * av[i];
    }
  });
}

Var add_row_broadcast(Var a, Var row) {
  Tape& t = common_tape({a, row});
  const Matrix& bias = row.value();
  if (bias.rows() != 1 || bias.cols() != a.cols()) {
    throw DimensionError("add_row_broadcast: " + shape_string(a.value()) + " + " +
                         shape_string(bias));
  }
  Matrix out = a.value();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto o = out.row(r);
    for (std::size_t j = 0; j < o.size(); ++j) o[j] += bias(0, j);
  }
  const std::size_t ia = a.id(), ib = row.id();
  const Var inputs[] = {a, row};
  return t.push(std::move(out), inputs, [ia, ib](Tape& tp, std::size_t self) {
    const Matrix& g = tp.grad_at(self);
    accumulate(tp, ia, g);
    if (tp.needs_grad(ib)) {
      Matrix& db = tp.grad_at(ib);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t j = 0; j < g.cols(); ++j) db(0, j) += g(r, j);
    }
  });
}

Var log_clamped(Var a, double floor) {
  Tape& t = common_tape({a});
  Matrix out = a.value();
  for (double& x : out.values()) {
    t.record_kink(x > floor);
    x = std::log(std::max(x, floor));
  }
  const std::size_t ia = a.id();
  const Var inputs[] = {a};
  return t.push(std::move(out), inputs, [ia, floor](Tape& tp, std::size_t self) {
    const auto g = tp.grad_at(self).values();
    const auto x = tp.value_at(ia).values();
    auto dst = tp.grad_at(ia).values();
    for (std::size_t i = 0; i < g.size(); ++i)
      if (x[i] > floor) dst[i] += g[i] / x[i];
  });
}

Var sum(Var a) {
  Tape& t = common_tape({a});
  double total = 0.0;
  for (double x : a.value().values()) total += x;
  const std::size_t ia = a.id();
  const Var inputs[] = {a};
  return t.push(Matrix(1, 1, total), inputs, [ia](Tape& tp, std::size_t self) {
    const double g = tp.grad_at(self)(0, 0);
    for (double& d : tp.grad_at(ia).values()) d += g;
  });
}

Var mean(Var a) {
  Tape& t = common_tape({a});
  const std::size_t count = a.value().size();
  if (count == 0) throw DimensionError("mean of an empty matrix");
  double total = 0.0;
  for (double x : a.value().values()) total += x;
  const std::size_t ia = a.id();
  const Var inputs[] = {a};
  return t.push(Matrix(1, 1, total / static_cast<double>(count)), inputs,
                [ia, count](Tape& tp, std::size_t self) {
                  const double g = tp.grad_at(self)(0, 0) / static_cast<double>(count);
                  for (double& d : tp.grad_at(ia).values()) d += g;
                });
}

}  // namespace mgal::nd
