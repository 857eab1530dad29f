#pragma once

#include <iosfwd>
#include <vector>

#include "sbpcg/assembly.hpp"
#include "sbpcg/dense.hpp"
#include "sbpcg/sat.hpp"

namespace sbpcg {

/// Without a boundary operator: WQ + (WQ)^T. With one:
/// W(Pi - Q) + (W(Pi - Q))^T, W = I kron weight (weight = P^{-1} for
/// symmetrizable systems, identity when empty). Symmetrized explicitly.
DenseMatrix stability_matrix(const GlobalOperators& ops, const BoundaryOperator* pi = nullptr,
                             const DenseMatrix& weight = {});

struct ExtremeEigs {
  std::vector<double> negatives;  // k smallest, ascending
  std::vector<double> positives;  // k largest, descending
  std::vector<double> all;        // full spectrum, ascending
  double max_residual = 0.0;      // max ||S v - lambda v|| / ||S||
};

/// Dense symmetric eigensolve (n <= 5000). Every returned pair is checked:
/// ||S v - lambda v|| <= 1e-10 ||S||, else ConvergenceError.
ExtremeEigs extreme_eigs(const DenseMatrix& S, std::size_t k);

/// max_i |ev[i] + ev[n-1-i]| over an ascending spectrum; zero when the
/// spectrum is symmetric about the origin.
double pairing_defect(const std::vector<double>& ascending);

/// Largest |lambda| among the `count` eigenvalues closest to zero.
double near_zero_max(const std::vector<double>& ascending, std::size_t count);

struct SpectrumReport {
  std::size_t dofs = 0;
  std::size_t interior_dofs = 0;
  std::vector<double> neg_nosat, pos_nosat, neg_sat, pos_sat;
  double q_norm = 0.0;
  double tolerance = 0.0;   // 1e-12 ||Q||_max
  double lambda_max_sat = 0.0;
  double pairing_defect = 0.0;     // of Q + Q^T
  double interior_mode_max = 0.0;  // of Q + Q^T
  double interior_residual = 0.0;  // from check_sbp
  double boundary_residual = 0.0;
  bool stable = false;
};

SpectrumReport spectrum_report(const GlobalOperators& ops, const BoundaryOperator& pi, std::size_t k,
                               const DenseMatrix& weight = {});

/// CSV: '#' header lines with DoFs and verdict, then
/// neg_noSAT,pos_noSAT,neg_SAT,pos_SAT rows.
void write_spectrum_csv(std::ostream& os, const SpectrumReport& r);

}  // namespace sbpcg
