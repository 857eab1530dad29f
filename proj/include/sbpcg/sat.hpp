#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sbpcg/assembly.hpp"
#include "sbpcg/dense.hpp"
#include "sbpcg/space.hpp"
#include "sbpcg/sparse.hpp"

namespace sbpcg {

/// Pointwise boundary penalty. The SAT added to M du/dt is
///   boundary integral of phi_i (state u + data g).
/// It is energy stable in the P^{-1}-weighted norm when
/// P^{-1}(state - A_n/2) is negative semi-definite.
struct PointwiseSat {
  DenseMatrix state;  // m x m
  DenseMatrix data;   // m x q
};

/// Normal-direction characteristic data. The decomposition is taken of the
/// symmetric matrix C = P^{-1/2} A_n P^{1/2} (equal to A_n P when P = I),
/// so the eigenvalues are those of A_n.
struct CharacteristicDecomposition {
  DenseMatrix An;       // n_x A + n_y B
  DenseMatrix C;
  DenseMatrix P_half;   // P^{1/2}
  DenseMatrix P_mhalf;  // P^{-1/2}
  std::vector<double> lambda;  // descending
  DenseMatrix X;               // orthonormal, column k <-> lambda[k]
  std::vector<std::size_t> positive, negative, zero;  // column indices
};

/// Throws InvalidArgument if A_n P is not symmetric (1e-12 relative) or P
/// is not SPD. Zero eigenvalues: |lambda| <= 1e-10 ||C||_max.
CharacteristicDecomposition characteristic_decompose(const DenseMatrix& A, const DenseMatrix& B,
                                                     const DenseMatrix& P, Point n);

/// Penalty on W^- - R W^+ - g in characteristic variables with weight
/// Lambda^-. R is (#negative x #positive). Throws StabilityError unless
/// Lambda^+ + R^T Lambda^- R is positive semi-definite.
PointwiseSat build_pi_system(const CharacteristicDecomposition& d, const DenseMatrix& R, double scale = 1.0);

enum class R13Variant { eigen_shift, delta };

/// Boundary operator for the R13 heat system with the accommodation
/// boundary condition L_n U = G_n at normal angle gamma. Both variants use
/// Pi_n = (C_n/2 - lambda P) L_n^T (L_n P L_n^T)^{-1} with C_n = A_n P;
/// the delta variant sets lambda = -delta (delta < 0), the eigen-shift
/// variant takes lambda >= |most negative eigenvalue| / 2. The returned
/// operator penalises Pi_n (L_n U - G_n).
PointwiseSat build_pi_r13(double alpha, double beta, double gamma, R13Variant variant, double value);

/// The R13 coefficient matrix A_alpha = cos(a) A + sin(a) B, its symmetrizer
/// and the boundary matrix L_n.
DenseMatrix r13_matrix(double angle);
DenseMatrix r13_symmetrizer();
DenseMatrix r13_boundary_matrix(double alpha, double beta, double gamma);

/// Boundary data g at a point; its length must match data.cols().
using BoundaryData =
    std::function<std::vector<double>(const Point& x, const Point& n, const std::string& tag, double t)>;
using PointwiseRule = std::function<PointwiseSat(const Point& x, const Point& n, const std::string& tag)>;

/// Assembled SAT: the matrix Pi and the data functional G(t).
class BoundaryOperator {
 public:
  struct Record {
    Point x;
    Point normal;
    std::string tag;
    double weight;
    std::vector<std::size_t> dofs;
    std::vector<double> phi;
    PointwiseSat sat;
  };

  BoundaryOperator() = default;
  BoundaryOperator(const FunctionSpace& space, std::size_t m, const PointwiseRule& rule, BoundaryData g,
                   int edge_degree, bool time_dependent = true);

  const SparseMatrix& matrix() const { return pi_; }
  std::size_t components() const { return m_; }
  bool has_data() const { return static_cast<bool>(g_); }
  bool time_dependent() const { return time_dependent_; }
  /// rhs += G(t)
  void add_data(double t, std::span<double> rhs) const;
  std::vector<double> data(double t) const;
  const std::vector<Record>& records() const { return records_; }

 private:
  std::size_t m_ = 1;
  std::size_t n_ = 0;
  SparseMatrix pi_;
  BoundaryData g_;
  bool time_dependent_ = true;
  std::vector<Record> records_;
  mutable std::vector<double> cached_;
};

using TimeFunction = std::function<double(double)>;

/// 1D scalar advection u_t + a u_x = 0: penalty tau |min(a n, 0)| (u - b)
/// at each end. Both tau must be < -1/2 (StabilityError otherwise).
BoundaryOperator scalar_sat_1d(const FunctionSpace& space, double a, double tau_left, double tau_right,
                               TimeFunction b_left = {}, TimeFunction b_right = {});

/// Scalar 2D upwind SAT: pointwise scale * min(a.n, 0) (u - g). Outflow
/// faces contribute nothing.
BoundaryOperator scalar_sat_2d(const FunctionSpace& space, const VelocityField& a, BoundaryData g,
                               int edge_degree, double scale = 1.0);

/// Characteristic SAT for u_t + A u_x + B u_y = ...; `reflection` returns
/// R_n at each boundary point (an empty matrix means R = 0).
using ReflectionFn = std::function<DenseMatrix(const Point& x, const Point& n, const std::string& tag)>;
BoundaryOperator system_sat(const FunctionSpace& space, const DenseMatrix& A, const DenseMatrix& B,
                            const DenseMatrix& P, const ReflectionFn& reflection, BoundaryData g,
                            int edge_degree, double scale = 1.0);

}  // namespace sbpcg
