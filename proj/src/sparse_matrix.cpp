#include "specseg/sparse_matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "specseg/error.hpp"

namespace specseg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> triplets) {
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  for (const Triplet& t : sorted) {
    if (t.row >= rows || t.col >= cols) {
      throw Error(ErrorCode::DimensionError, "entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                                 ") outside a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                                 " matrix");
    }
  }
  // Bucket by row (stable), then order each short row by column.
  std::vector<std::size_t> start(rows + 1, 0);
  for (const Triplet& t : triplets) ++start[t.row + 1];
  for (std::size_t r = 0; r < rows; ++r) start[r + 1] += start[r];
  std::vector<std::size_t> next(start.begin(), start.end() - 1);
  for (const Triplet& t : triplets) sorted[next[t.row]++] = t;

  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(sorted.size());
  m.values_.reserve(sorted.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const auto first = sorted.begin() + static_cast<std::ptrdiff_t>(start[r]);
    const auto last = sorted.begin() + static_cast<std::ptrdiff_t>(start[r + 1]);
    std::stable_sort(first, last, [](const Triplet& a, const Triplet& b) { return a.col < b.col; });
    for (auto it = first; it != last;) {
      const std::size_t c = it->col;
      double sum = 0.0;
      while (it != last && it->col == c) sum += (it++)->value;
      if (sum != 0.0) {
        m.col_idx_.push_back(c);
        m.values_.push_back(sum);
      }
    }
    m.row_ptr_[r + 1] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXd& dense) {
  std::vector<Triplet> t;
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (dense(r, c) != 0.0) t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), dense(r, c)});
    }
  }
  return from_triplets(static_cast<std::size_t>(dense.rows()), static_cast<std::size_t>(dense.cols()), t);
}

SparseMatrix SparseMatrix::from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                                   std::vector<std::size_t> col_idx, std::vector<double> values) {
  if (row_ptr.size() != rows + 1 || row_ptr.front() != 0 || row_ptr.back() != col_idx.size() ||
      col_idx.size() != values.size()) {
    throw Error(ErrorCode::DimensionError, "inconsistent compressed row arrays");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_ptr[r] > row_ptr[r + 1]) throw Error(ErrorCode::DimensionError, "row pointers decrease");
    for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
      if (col_idx[p] >= cols || (p > row_ptr[r] && col_idx[p] <= col_idx[p - 1])) {
        throw Error(ErrorCode::DimensionError, "row " + std::to_string(r) + " has unsorted or out of range columns");
      }
    }
  }
  SparseMatrix m(rows, cols);
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

std::span<const std::size_t> SparseMatrix::row_cols(std::size_t r) const {
  return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

std::span<const double> SparseMatrix::row_values(std::size_t r) const {
  return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[col_idx_[p]];
    y[r] = acc;
  }
}

void SparseMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) y[col_idx_[p]] += values_[p] * xr;
  }
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.push_back({r, col_idx_[p], values_[p]});
  }
  return out;
}

Eigen::MatrixXd SparseMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_idx_[p])) = values_[p];
    }
  }
  return d;
}

}  // namespace specseg
