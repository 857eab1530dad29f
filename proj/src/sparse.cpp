#include "sbpcg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sbpcg/error.hpp"

namespace sbpcg {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row >= rows || t.col >= cols) throw InvalidArgument("SparseMatrix: triplet out of range");
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const auto& t = triplets[k];
    double sum = 0.0;
    std::size_t e = k;
    while (e < triplets.size() && triplets[e].row == t.row && triplets[e].col == t.col) sum += triplets[e++].value;
    m.col_idx_.push_back(t.col);
    m.values_.push_back(sum);
    ++m.row_ptr_[t.row + 1];
    k = e;
  }
  for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw InvalidArgument("SparseMatrix: matvec size mismatch");
  kernels::omp::spmv(view(), x, y);
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

void SparseMatrix::multiply_block(std::size_t m, std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ * m || y.size() != rows_ * m)
    throw InvalidArgument("SparseMatrix: block matvec size mismatch");
  kernels::omp::block_spmv(view(), m, x, y);
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.push_back({col_idx_[k], i, values_[k]});
  return from_triplets(cols_, rows_, std::move(t));
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d(i, col_idx_[k]) += values_[k];
  return d;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.push_back({i, col_idx_[k], values_[k]});
  return t;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("add: dimension mismatch");
  auto t = a.triplets();
  for (auto& e : t) e.value *= alpha;
  for (auto e : b.triplets()) {
    e.value *= beta;
    t.push_back(e);
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix scaled(const SparseMatrix& a, double s) { return add(a, SparseMatrix(a.rows(), a.cols()), s, 0.0); }

SparseMatrix kron(const SparseMatrix& a, const DenseMatrix& b) {
  std::vector<Triplet> t;
  const std::size_t br = b.rows(), bc = b.cols();
  for (const auto& e : a.triplets())
    for (std::size_t p = 0; p < br; ++p)
      for (std::size_t q = 0; q < bc; ++q) {
        const double v = e.value * b(p, q);
        if (v != 0.0) t.push_back({e.row * br + p, e.col * bc + q, v});
      }
  return SparseMatrix::from_triplets(a.rows() * br, a.cols() * bc, std::move(t));
}

void write_matrix_market(std::ostream& os, const SparseMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  char buf[64];
  for (const auto& e : a.triplets()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << e.row + 1 << ' ' << e.col + 1 << ' ' << buf << '\n';
  }
}

}  // namespace sbpcg
