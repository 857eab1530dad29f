#pragma once

#include <cstddef>
#include <span>

namespace sbpcg {

/// Non-owning view of a CSR matrix.
struct CsrView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const std::size_t> row_ptr;
  std::span<const std::size_t> col_idx;
  std::span<const double> values;
};

// The hot loops of the time integrator. `serial` is the reference
// implementation; `omp` must agree with it bit for bit on spmv/axpy and to
// rounding on dot (reduction order differs).
namespace kernels {

namespace serial {
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);
/// y = (A kron I_m) x with DoF-major layout x[dof*m + c].
void block_spmv(const CsrView& a, std::size_t m, std::span<const double> x,
                std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace serial

namespace omp {
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);
void block_spmv(const CsrView& a, std::size_t m, std::span<const double> x,
                std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace omp

int max_threads();

}  // namespace kernels
}  // namespace sbpcg
