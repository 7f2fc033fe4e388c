#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specseg {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct SparseEntry {
  std::size_t col = 0;
  double value = 0.0;
};

// Row-compressed sparse matrix with non-negative use in mind. Stored entries
// are non-zero and each (row, col) key appears once, columns sorted per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  // Duplicate keys are summed; entries that end up zero are not stored.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> triplets);
  static SparseMatrix from_dense(const Eigen::MatrixXd& dense);
  // Takes compressed rows as built; columns must be sorted within each row.
  static SparseMatrix from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                               std::vector<std::size_t> col_idx, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t non_zeros() const { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t r) const;
  std::span<const double> row_values(std::size_t r) const;

  double at(std::size_t r, std::size_t c) const;

  // y = A x and y = A^T x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply_transpose(std::span<const double> x, std::span<double> y) const;

  std::vector<Triplet> triplets() const;
  Eigen::MatrixXd to_dense() const;

  // Same sparsity pattern, values replaced by f(row, col, value).
  template <typename F>
  SparseMatrix map_values(F&& f) const {
    SparseMatrix out = *this;
    out.transform_values(f);
    return out;
  }
  template <typename F>
  void transform_values(F&& f) {
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) values_[p] = f(r, col_idx_[p], values_[p]);
    }
  }

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace specseg
