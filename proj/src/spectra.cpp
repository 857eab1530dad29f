#include "sbpcg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sbpcg/error.hpp"

namespace sbpcg {

DenseMatrix stability_matrix(const GlobalOperators& ops, const BoundaryOperator* pi, const DenseMatrix& weight) {
  const std::size_t m = ops.components;
  if (!weight.empty() && (weight.rows() != m || weight.cols() != m))
    throw InvalidArgument("stability_matrix: weight must be m x m");
  SparseMatrix a = ops.Q;
  if (pi) {
    if (pi->matrix().rows() != ops.Q.rows()) throw InvalidArgument("stability_matrix: Pi and Q differ in size");
    a = add(pi->matrix(), ops.Q, 1.0, -1.0);
  }
  if (!weight.empty() && m > 1) a = block_scale_rows(a, weight);
  DenseMatrix s = a.to_dense();
  s += s.transpose();
  s.symmetrize();
  return s;
}

ExtremeEigs extreme_eigs(const DenseMatrix& S, std::size_t k) {
  const std::size_t n = S.rows();
  if (S.cols() != n) throw InvalidArgument("extreme_eigs: matrix is not square");
  if (n > 5000) throw InvalidArgument("extreme_eigs: dense path limited to n <= 5000");
  if (S.asymmetry() > 1e-12 * std::max(1.0, S.max_abs())) throw InvalidArgument("extreme_eigs: matrix is not symmetric");
  ExtremeEigs out;
  if (n == 0) return out;
  const auto eig = symmetric_eigen(S);
  out.all = eig.values;
  const double norm = std::max({std::abs(eig.values.front()), std::abs(eig.values.back()), 1e-300});
  k = std::min(k, n);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < k; ++i) {
    picked.push_back(i);
    picked.push_back(n - 1 - i);
  }
  std::vector<double> v(n);
  for (std::size_t idx : picked) {
    for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, idx);
    const auto sv = S * std::span<const double>(v);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (sv[i] - eig.values[idx] * v[i]) * (sv[i] - eig.values[idx] * v[i]);
    out.max_residual = std::max(out.max_residual, std::sqrt(r2) / norm);
  }
  if (out.max_residual > 1e-10) throw ConvergenceError("extreme_eigs: eigenpair residual check failed");
  for (std::size_t i = 0; i < k; ++i) {
    out.negatives.push_back(eig.values[i]);
    out.positives.push_back(eig.values[n - 1 - i]);
  }
  return out;
}

double pairing_defect(const std::vector<double>& ev) {
  double d = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) d = std::max(d, std::abs(ev[i] + ev[ev.size() - 1 - i]));
  return d;
}

double near_zero_max(const std::vector<double>& ev, std::size_t count) {
  std::vector<double> mags;
  mags.reserve(ev.size());
  for (double v : ev) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  if (count == 0) return 0.0;
  return mags[std::min(count, mags.size()) - 1];
}

SpectrumReport spectrum_report(const GlobalOperators& ops, const BoundaryOperator& pi, std::size_t k,
                               const DenseMatrix& weight) {
  SpectrumReport r;
  r.dofs = ops.Q.rows();
  r.interior_dofs = static_cast<std::size_t>(std::count(ops.boundary.begin(), ops.boundary.end(), false));
  const auto sbp = check_sbp(ops, weight);
  r.q_norm = sbp.q_norm;
  r.tolerance = sbp.tolerance;
  r.interior_residual = sbp.interior_residual;
  r.boundary_residual = sbp.boundary_residual;

  const auto plain = extreme_eigs(stability_matrix(ops, nullptr, weight), k);
  r.neg_nosat = plain.negatives;
  r.pos_nosat = plain.positives;
  r.pairing_defect = pairing_defect(plain.all);
  r.interior_mode_max = near_zero_max(plain.all, r.interior_dofs);

  const auto sat = extreme_eigs(stability_matrix(ops, &pi, weight), k);
  r.neg_sat = sat.negatives;
  r.pos_sat = sat.positives;
  r.lambda_max_sat = sat.all.empty() ? 0.0 : sat.all.back();
  r.stable = r.lambda_max_sat <= r.tolerance;
  return r;
}

void write_spectrum_csv(std::ostream& os, const SpectrumReport& r) {
  char buf[160];
  os << "# dofs " << r.dofs << '\n';
  std::snprintf(buf, sizeof buf, "# lambda_max_SAT %.6e tolerance %.6e\n", r.lambda_max_sat, r.tolerance);
  os << buf;
  os << "# verdict " << (r.stable ? "stable" : "unstable") << '\n';
  os << "neg_noSAT,pos_noSAT,neg_SAT,pos_SAT\n";
  for (std::size_t i = 0; i < r.neg_nosat.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.neg_nosat[i], r.pos_nosat[i], r.neg_sat[i],
                  r.pos_sat[i]);
    os << buf;
  }
}

}  // namespace sbpcg
