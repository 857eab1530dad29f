#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sbpcg/dense.hpp"
#include "sbpcg/kernels.hpp"

namespace sbpcg {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Immutable once built.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicates are summed in insertion order, so the result does not
  /// depend on how the triplets were produced as long as their order is
  /// fixed. Exact zeros are kept (they document the sparsity pattern).
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }
  CsrView view() const { return {rows_, cols_, row_ptr_, col_idx_, values_}; }

  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;
  double max_abs() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  /// y = (A kron I_m) x, DoF-major.
  void multiply_block(std::size_t m, std::span<const double> x, std::span<double> y) const;

  SparseMatrix transpose() const;
  DenseMatrix to_dense() const;
  std::vector<Triplet> triplets() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// alpha*A + beta*B
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0, double beta = 1.0);
SparseMatrix scaled(const SparseMatrix& a, double s);
/// A kron B with B a small dense block; zero products are dropped.
SparseMatrix kron(const SparseMatrix& a, const DenseMatrix& b);

/// Matrix Market coordinate (general, real) writer.
void write_matrix_market(std::ostream& os, const SparseMatrix& a);

}  // namespace sbpcg
