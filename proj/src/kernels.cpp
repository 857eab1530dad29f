#include "sbpcg/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sbpcg::kernels {

namespace serial {

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.values[k] * x[a.col_idx[k]];
    y[i] = s;
  }
}

void block_spmv(const CsrView& a, std::size_t m, std::span<const double> x,
                std::span<double> y) {
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* yi = y.data() + i * m;
    for (std::size_t c = 0; c < m; ++c) yi[c] = 0.0;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const double v = a.values[k];
      const double* xj = x.data() + a.col_idx[k] * m;
      for (std::size_t c = 0; c < m; ++c) yi[c] += v * xj[c];
    }
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace serial

namespace omp {

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  const long n = static_cast<long>(a.rows);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.values[k] * x[a.col_idx[k]];
    y[i] = s;
  }
}

void block_spmv(const CsrView& a, std::size_t m, std::span<const double> x,
                std::span<double> y) {
  const long n = static_cast<long>(a.rows);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    double* yi = y.data() + i * m;
    for (std::size_t c = 0; c < m; ++c) yi[c] = 0.0;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const double v = a.values[k];
      const double* xj = x.data() + a.col_idx[k] * m;
      for (std::size_t c = 0; c < m; ++c) yi[c] += v * xj[c];
    }
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  const long n = static_cast<long>(x.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const long n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sbpcg::kernels
