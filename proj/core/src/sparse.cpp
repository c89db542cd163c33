#include "mgal/ndcore/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "mgal/error.hpp"

namespace mgal::nd {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  validate();
}

void CsrMatrix::validate() const {
  if (row_ptr_.size() != rows_ + 1) {
    throw ValidationError("csr: row pointer length " + std::to_string(row_ptr_.size()) +
                          " for " + std::to_string(rows_) + " rows");
  }
  if (row_ptr_.front() != 0) throw ValidationError("csr: row pointer must start at 0");
  if (col_idx_.size() != values_.size() || row_ptr_.back() != values_.size()) {
    throw ValidationError("csr: value/index arrays disagree with row pointer");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (row_ptr_[r] > row_ptr_[r + 1]) throw ValidationError("csr: row pointer decreases");
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      if (col_idx_[p] >= cols_) {
        throw ValidationError("csr: column " + std::to_string(col_idx_[p]) +
                              " out of range in row " + std::to_string(r));
      }
      if (p > row_ptr_[r] && col_idx_[p] <= col_idx_[p - 1]) {
        throw ValidationError("csr: columns not strictly increasing in row " + std::to_string(r));
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw IndexError("csr: triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + shape_string(rows, cols));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(entries.size());
  values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& t = entries[i];
    if (i > 0 && entries[i - 1].row == t.row && entries[i - 1].col == t.col) {
      values.back() += t.value;
      continue;
    }
    col_idx.push_back(t.col);
    values.push_back(t.value);
    ++row_ptr[t.row + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) row_ptr[r + 1] += row_ptr[r];
  return CsrMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

CsrMatrix CsrMatrix::from_dense(const Matrix& dense) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < dense.rows(); ++i)
    for (std::size_t j = 0; j < dense.cols(); ++j)
      if (dense(i, j) != 0.0) entries.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), dense.cols(), std::move(entries));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<std::size_t> row_ptr(n + 1);
  std::vector<std::size_t> col_idx(n);
  for (std::size_t i = 0; i <= n; ++i) row_ptr[i] = i;
  for (std::size_t i = 0; i < n; ++i) col_idx[i] = i;
  return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::vector<double>(n, 1.0));
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw IndexError("csr: (" + std::to_string(r) + ", " + std::to_string(c) + ") outside " +
                     shape_string(rows_, cols_));
  }
  auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
  auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
  auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Matrix CsrMatrix::to_dense() const {
  Matrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out(r, col_idx_[p]) = values_[p];
  return out;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<std::size_t> row_ptr(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++row_ptr[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) row_ptr[c + 1] += row_ptr[c];
  std::vector<std::size_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
  std::vector<std::size_t> col_idx(nnz());
  std::vector<double> values(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const std::size_t dst = cursor[col_idx_[p]]++;
      col_idx[dst] = r;
      values[dst] = values_[p];
    }
  }
  return CsrMatrix(cols_, rows_, std::move(row_ptr), std::move(col_idx), std::move(values));
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      if (std::abs(values_[p] - at(col_idx_[p], r)) > tol) return false;
  return true;
}

std::vector<double> CsrMatrix::row_sums() const {
  std::vector<double> sums(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) sums[r] += values_[p];
  return sums;
}

Matrix spmm(const CsrMatrix& s, const Matrix& b) {
  if (s.cols() != b.rows()) {
    throw DimensionError("spmm: sparse " + shape_string(s.rows(), s.cols()) + " * " +
                         shape_string(b));
  }
  Matrix out(s.rows(), b.cols());
  const auto& rp = s.row_ptr();
  const auto& ci = s.col_idx();
  const auto& vals = s.values();
  const std::size_t n = b.cols();
  for (std::size_t r = 0; r < s.rows(); ++r) {
    double* orow = out.row(r).data();
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
      const double v = vals[p];
      const double* brow = b.row(ci[p]).data();
      for (std::size_t j = 0; j < n; ++j) orow[j] += v * brow[j];
    }
  }
  return out;
}

Matrix spmm_tn(const CsrMatrix& s, const Matrix& b) {
  if (s.rows() != b.rows()) {
    throw DimensionError("spmm_tn: sparse " + shape_string(s.rows(), s.cols()) + "^T * " +
                         shape_string(b));
  }
  Matrix out(s.cols(), b.cols());
  const auto& rp = s.row_ptr();
  const auto& ci = s.col_idx();
  const auto& vals = s.values();
  const std::size_t n = b.cols();
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const double* brow = b.row(r).data();
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
      const double v = vals[p];
      double* orow = out.row(ci[p]).data();
      for (std::size_t j = 0; j < n; ++j) orow[j] += v * brow[j];
    }
  }
  return out;
}

}  // namespace mgal::nd
