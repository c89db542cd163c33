#pragma once

#include <cstddef>
#include <vector>

#include "mgal/ndcore/matrix.hpp"

namespace mgal::nd {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Compressed-sparse-row matrix. Column indices are strictly increasing within
// each row; the constructor rejects anything else.
class CsrMatrix {
 public:
  CsrMatrix() : row_ptr_(1, 0) {}
  explicit CsrMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> values);

  // Duplicate coordinates are summed. Explicit zeros are kept.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static CsrMatrix from_dense(const Matrix& dense);
  static CsrMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
  const std::vector<double>& values() const noexcept { return values_; }

  // Stored value at (r, c), or 0 when the coordinate is not in the pattern.
  double at(std::size_t r, std::size_t c) const;

  Matrix to_dense() const;
  CsrMatrix transpose() const;
  bool is_symmetric(double tol) const;
  std::vector<double> row_sums() const;

  friend bool operator==(const CsrMatrix& a, const CsrMatrix& b) = default;

 private:
  void validate() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

// s * b
Matrix spmm(const CsrMatrix& s, const Matrix& b);
// s^T * b, computed by scatter without materializing the transpose
Matrix spmm_tn(const CsrMatrix& s, const Matrix& b);

}  // namespace mgal::nd
