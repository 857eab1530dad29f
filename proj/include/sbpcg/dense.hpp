#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sbpcg {

/// Small row-major dense matrix. Used for element blocks, m x m flux
/// matrices and the desk-scale stability matrices.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  DenseMatrix transpose() const;
  double max_abs() const;
  /// max |A - A^T|
  double asymmetry() const;
  void symmetrize();

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);

/// Inverse by Gauss-Jordan elimination with partial pivoting. Throws
/// InvalidArgument when a pivot falls below `singular_tol` times the
/// largest entry.
DenseMatrix inverse(const DenseMatrix& a, double singular_tol = 1e-14);

/// Solve A x = b (dense LU with partial pivoting).
std::vector<double> solve(const DenseMatrix& a, std::span<const double> b);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k belongs to values[k]
};

/// Eigen-decomposition of a symmetric matrix: Householder reduction to
/// tridiagonal form followed by the implicit QL iteration. Only the lower
/// triangle is referenced.
SymmetricEigen symmetric_eigen(const DenseMatrix& a, int max_sweeps = 60);

/// Eigenvalues only, ascending. The QL rotations are not applied to vectors.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a, int max_sweeps = 60);

/// Kronecker product a (x) b.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace sbpcg
