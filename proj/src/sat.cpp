#include "sbpcg/sat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sbpcg/error.hpp"

namespace sbpcg {

namespace {

DenseMatrix columns(const DenseMatrix& x, const std::vector<std::size_t>& idx) {
  DenseMatrix out(x.rows(), idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, k) = x(i, idx[k]);
  return out;
}

double min_eigenvalue_of_symmetric_part(const DenseMatrix& a) {
  DenseMatrix s = a + a.transpose();
  s *= 0.5;
  const auto ev = symmetric_eigenvalues(s);
  return ev.empty() ? 0.0 : ev.front();
}

}  // namespace

CharacteristicDecomposition characteristic_decompose(const DenseMatrix& A, const DenseMatrix& B,
                                                     const DenseMatrix& P, Point n) {
  const std::size_t m = A.rows();
  if (A.cols() != m || P.rows() != m || P.cols() != m || (!B.empty() && (B.rows() != m || B.cols() != m)))
    throw InvalidArgument("characteristic_decompose: A, B, P must be m x m");
  CharacteristicDecomposition d;
  d.An = n.x * A;
  if (!B.empty()) d.An += n.y * B;

  if (P.asymmetry() > 1e-14 * std::max(1.0, P.max_abs()))
    throw InvalidArgument("symmetrizer P is not symmetric");
  const auto pe = symmetric_eigen(P);
  if (pe.values.front() <= 0.0) throw InvalidArgument("symmetrizer P is not positive definite");
  DenseMatrix sq(m, m), isq(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    sq(k, k) = std::sqrt(pe.values[k]);
    isq(k, k) = 1.0 / sq(k, k);
  }
  const DenseMatrix vt = pe.vectors.transpose();
  d.P_half = pe.vectors * sq * vt;
  d.P_mhalf = pe.vectors * isq * vt;

  const DenseMatrix AP = d.An * P;
  if (AP.asymmetry() > 1e-12 * std::max(1.0, AP.max_abs()))
    throw InvalidArgument("A_n P is not symmetric: the system is not symmetrized by P");
  d.C = d.P_mhalf * d.An * d.P_half;
  d.C.symmetrize();

  const auto eig = symmetric_eigen(d.C);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eig.values[a] > eig.values[b]; });
  d.lambda.resize(m);
  d.X = DenseMatrix(m, m);
  const double thr = 1e-10 * d.C.max_abs();
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t src = order[k];
    double lam = eig.values[src];
    if (std::abs(lam) <= thr) lam = 0.0;
    d.lambda[k] = lam;
    double sign = 1.0;
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(eig.vectors(i, src)) > 1e-12) {
        sign = eig.vectors(i, src) > 0 ? 1.0 : -1.0;
        break;
      }
    for (std::size_t i = 0; i < m; ++i) d.X(i, k) = sign * eig.vectors(i, src);
    (lam > 0 ? d.positive : lam < 0 ? d.negative : d.zero).push_back(k);
  }
  return d;
}

PointwiseSat build_pi_system(const CharacteristicDecomposition& d, const DenseMatrix& R_in, double scale) {
  const std::size_t np = d.positive.size(), nn = d.negative.size();
  DenseMatrix R = R_in.empty() ? DenseMatrix(nn, np) : R_in;
  if (R.rows() != nn || R.cols() != np)
    throw InvalidArgument("reflection matrix must be (#negative x #positive) = (" + std::to_string(nn) + " x " +
                          std::to_string(np) + ")");
  if (scale < 1.0) throw InvalidArgument("SAT scale must be >= 1");

  DenseMatrix lp(np, np), lm(nn, nn);
  for (std::size_t k = 0; k < np; ++k) lp(k, k) = d.lambda[d.positive[k]];
  for (std::size_t k = 0; k < nn; ++k) lm(k, k) = d.lambda[d.negative[k]];
  if (np > 0) {
    const DenseMatrix cond = lp + R.transpose() * lm * R;
    const double tol = 1e-12 * std::max(1.0, cond.max_abs());
    if (min_eigenvalue_of_symmetric_part(cond) < -tol)
      throw StabilityError("Lambda+ + R^T Lambda- R is not positive semi-definite: the reflection is too strong");
  }
  const DenseMatrix Xm = columns(d.X, d.negative);
  const DenseMatrix Xp = columns(d.X, d.positive);
  const DenseMatrix left = scale * (d.P_half * Xm * lm);
  PointwiseSat s;
  s.state = left * (Xm.transpose() - R * Xp.transpose()) * d.P_mhalf;
  s.data = -1.0 * left;
  return s;
}

DenseMatrix r13_matrix(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {{0, c, s, 0, 0, 0},           {c, 0, 0, c, s, 0},
          {s, 0, 0, 0, c, s},           {0, c, 0, 0, 0, 0},
          {0, s / 2, c / 2, 0, 0, 0},   {0, 0, s, 0, 0, 0}};
}

DenseMatrix r13_symmetrizer() {
  const double p[6] = {1, 1, 1, 1, 0.5, 1};
  return DenseMatrix::diagonal(p);
}

DenseMatrix r13_boundary_matrix(double alpha, double beta, double gamma) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  return {{-alpha, c, s, -alpha * c * c, -2 * alpha * c * s, -alpha * s * s},
          {0, -beta * s, beta * c, -c * s, std::cos(2 * gamma), s * c}};
}

PointwiseSat build_pi_r13(double alpha, double beta, double gamma, R13Variant variant, double value) {
  const DenseMatrix An = r13_matrix(gamma);
  const DenseMatrix P = r13_symmetrizer();
  const DenseMatrix L = r13_boundary_matrix(alpha, beta, gamma);
  const DenseMatrix LPLt = L * P * L.transpose();
  // det = (1 + 2 alpha^2)(1/2 + beta^2) > 0 for real parameters.
  const double det = LPLt(0, 0) * LPLt(1, 1) - LPLt(0, 1) * LPLt(1, 0);
  if (!(std::abs(det) > 1e-14)) throw InvalidArgument("L_n P L_n^T is singular");

  double lambda = 0.0;
  if (variant == R13Variant::delta) {
    if (!(value < 0.0)) throw StabilityError("R13 boundary operator: delta must be negative");
    lambda = -value;
  } else {
    const auto ev = symmetric_eigenvalues(An * P);
    const double bound = 0.5 * std::abs(ev.front());
    if (value < bound - 1e-12)
      throw StabilityError("R13 boundary operator: eigen shift must be >= |most negative eigenvalue| / 2");
    lambda = value;
  }
  DenseMatrix core = 0.5 * (An * P) - lambda * P;
  const DenseMatrix pin = core * L.transpose() * inverse(LPLt);  // 6 x 2

  PointwiseSat s;
  s.state = pin * L;
  s.data = -1.0 * pin;
  const DenseMatrix energy = inverse(P) * (0.5 * An - s.state);
  if (min_eigenvalue_of_symmetric_part(energy) < -1e-10)
    throw StabilityError("R13 boundary operator is not energy stable for these parameters");
  return s;
}

BoundaryOperator::BoundaryOperator(const FunctionSpace& space, std::size_t m, const PointwiseRule& rule,
                                   BoundaryData g, int edge_degree, bool time_dependent)
    : m_(m), n_(space.num_dofs()), g_(std::move(g)), time_dependent_(time_dependent) {
  std::vector<Triplet> trip;
  for (const auto& f : space.boundary_trace(edge_degree)) {
    const std::size_t nf = f.dofs.size();
    for (std::size_t q = 0; q < f.points.size(); ++q) {
      Record r{f.points[q], f.normal, f.tag, f.weights[q], f.dofs,
               std::vector<double>(f.phi.begin() + static_cast<std::ptrdiff_t>(q * nf),
                                   f.phi.begin() + static_cast<std::ptrdiff_t>((q + 1) * nf)),
               rule(f.points[q], f.normal, f.tag)};
      if (r.sat.state.rows() != m || r.sat.state.cols() != m || (!r.sat.data.empty() && r.sat.data.rows() != m))
        throw InvalidArgument("pointwise SAT has wrong dimensions");
      for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < nf; ++j) {
          const double w = r.weight * r.phi[i] * r.phi[j];
          for (std::size_t c = 0; c < m; ++c)
            for (std::size_t e = 0; e < m; ++e) {
              const double v = r.sat.state(c, e);
              if (v != 0.0) trip.push_back({r.dofs[i] * m + c, r.dofs[j] * m + e, w * v});
            }
        }
      records_.push_back(std::move(r));
    }
  }
  pi_ = SparseMatrix::from_triplets(n_ * m, n_ * m, std::move(trip));
}

void BoundaryOperator::add_data(double t, std::span<double> rhs) const {
  if (!g_) return;
  if (rhs.size() != n_ * m_) throw InvalidArgument("BoundaryOperator: rhs size mismatch");
  if (!time_dependent_ && !cached_.empty()) {
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += cached_[i];
    return;
  }
  std::vector<double> out(rhs.size(), 0.0);
  std::vector<double> v(m_);
  for (const auto& r : records_) {
    if (r.sat.data.empty()) continue;
    const auto gv = g_(r.x, r.normal, r.tag, t);
    if (gv.size() != r.sat.data.cols()) throw InvalidArgument("boundary data has wrong length");
    for (std::size_t c = 0; c < m_; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < gv.size(); ++k) s += r.sat.data(c, k) * gv[k];
      v[c] = s;
    }
    for (std::size_t i = 0; i < r.dofs.size(); ++i)
      for (std::size_t c = 0; c < m_; ++c) out[r.dofs[i] * m_ + c] += r.weight * r.phi[i] * v[c];
  }
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += out[i];
  if (!time_dependent_) cached_ = std::move(out);
}

std::vector<double> BoundaryOperator::data(double t) const {
  std::vector<double> g(n_ * m_, 0.0);
  add_data(t, g);
  return g;
}

BoundaryOperator scalar_sat_1d(const FunctionSpace& space, double a, double tau_left, double tau_right,
                               TimeFunction b_left, TimeFunction b_right) {
  if (space.dimension() != 1) throw InvalidArgument("scalar_sat_1d needs a 1D space");
  if (!(tau_left < -0.5) || !(tau_right < -0.5))
    throw StabilityError("SAT penalty must satisfy tau < -1/2 at both ends");
  auto rule = [=](const Point&, const Point& n, const std::string&) {
    const double tau = n.x < 0 ? tau_left : tau_right;
    const double s = tau * std::abs(std::min(a * n.x, 0.0));
    return PointwiseSat{DenseMatrix{{s}}, DenseMatrix{{-s}}};
  };
  BoundaryData g;
  if (b_left || b_right)
    g = [b_left, b_right](const Point&, const Point& n, const std::string&, double t) {
      const TimeFunction& b = n.x < 0 ? b_left : b_right;
      return std::vector<double>{b ? b(t) : 0.0};
    };
  return BoundaryOperator(space, 1, rule, std::move(g), 1);
}

BoundaryOperator scalar_sat_2d(const FunctionSpace& space, const VelocityField& a, BoundaryData g, int edge_degree,
                               double scale) {
  if (scale < 1.0) throw InvalidArgument("SAT scale must be >= 1");
  auto rule = [&a, scale](const Point& x, const Point& n, const std::string&) {
    const Point v = a.value(x);
    const double s = scale * std::min(v.x * n.x + v.y * n.y, 0.0);
    return PointwiseSat{DenseMatrix{{s}}, DenseMatrix{{-s}}};
  };
  return BoundaryOperator(space, 1, rule, std::move(g), edge_degree);
}

BoundaryOperator system_sat(const FunctionSpace& space, const DenseMatrix& A, const DenseMatrix& B,
                            const DenseMatrix& P, const ReflectionFn& reflection, BoundaryData g, int edge_degree,
                            double scale) {
  auto rule = [&](const Point& x, const Point& n, const std::string& tag) {
    const auto d = characteristic_decompose(A, space.dimension() == 2 ? B : DenseMatrix(), P, n);
    return build_pi_system(d, reflection ? reflection(x, n, tag) : DenseMatrix(), scale);
  };
  return BoundaryOperator(space, A.rows(), rule, std::move(g), edge_degree);
}

}  // namespace sbpcg
