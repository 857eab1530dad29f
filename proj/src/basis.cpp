#include "sbpcg/basis.hpp"

#include "sbpcg/error.hpp"

namespace sbpcg {

BasisKind parse_basis_kind(const std::string& s) {
  if (s == "lagrange" || s == "Lagrange") return BasisKind::lagrange;
  if (s == "bernstein" || s == "Bernstein") return BasisKind::bernstein;
  throw InvalidArgument("unknown basis kind '" + s + "' (expected lagrange or bernstein)");
}

std::string to_string(BasisKind k) { return k == BasisKind::lagrange ? "lagrange" : "bernstein"; }

Basis::Basis(BasisKind kind, int order, int dim) : kind_(kind), p_(order), dim_(dim) {
  if (order < 1 || order > 3) throw InvalidArgument("basis order must be 1, 2 or 3");
  if (dim != 1 && dim != 2) throw InvalidArgument("basis dimension must be 1 or 2");
  if (dim == 1) {
    alpha_.push_back({p_, 0, 0});
    alpha_.push_back({0, p_, 0});
    for (int s = 1; s < p_; ++s) alpha_.push_back({p_ - s, s, 0});
    return;
  }
  alpha_.push_back({p_, 0, 0});
  alpha_.push_back({0, p_, 0});
  alpha_.push_back({0, 0, p_});
  for (int e = 0; e < 3; ++e)
    for (int s = 1; s < p_; ++s) {
      std::array<int, 3> a{0, 0, 0};
      a[static_cast<std::size_t>(e)] = p_ - s;
      a[static_cast<std::size_t>((e + 1) % 3)] = s;
      alpha_.push_back(a);
    }
  for (int i = 1; i < p_; ++i)
    for (int j = 1; i + j < p_; ++j) alpha_.push_back({p_ - i - j, i, j});
}

std::vector<Point> Basis::nodes() const {
  std::vector<Point> pts;
  pts.reserve(alpha_.size());
  for (const auto& a : alpha_) pts.push_back({static_cast<double>(a[1]) / p_, static_cast<double>(a[2]) / p_});
  return pts;
}

std::vector<std::size_t> Basis::face_functions(int face) const {
  const std::size_t off = dim_ == 1 ? static_cast<std::size_t>(1 - face) : static_cast<std::size_t>((face + 2) % 3);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < alpha_.size(); ++i)
    if (alpha_[i][off] == 0) idx.push_back(i);
  return idx;
}

std::array<double, 3> Basis::barycentric(const Point& xi) const {
  constexpr double tol = 1e-12;
  if (dim_ == 1) {
    if (xi.x < -tol || xi.x > 1.0 + tol) throw InvalidArgument("point outside the reference interval");
    return {1.0 - xi.x, xi.x, 0.0};
  }
  const std::array<double, 3> l{1.0 - xi.x - xi.y, xi.x, xi.y};
  for (double v : l)
    if (v < -tol) throw InvalidArgument("point outside the reference triangle");
  return l;
}

namespace {

// Univariate factors f_a(z) and f_a'(z), a = 0..p.
//   Lagrange:  f_a(z) = prod_{j<a} (p z - j)/(j+1)   (Silvester)
//   Bernstein: f_a(z) = z^a / a!                     (times p! overall)
void factors(BasisKind kind, int p, double z, double* f, double* df) {
  f[0] = 1.0;
  df[0] = 0.0;
  for (int a = 1; a <= p; ++a) {
    if (kind == BasisKind::lagrange) {
      const double g = (p * z - (a - 1)) / a;
      f[a] = f[a - 1] * g;
      df[a] = df[a - 1] * g + f[a - 1] * p / a;
    } else {
      f[a] = f[a - 1] * z / a;
      df[a] = df[a - 1] * z / a + f[a - 1] / a;
    }
  }
}

double prefactor(BasisKind kind, int p) {
  if (kind == BasisKind::lagrange) return 1.0;
  double c = 1.0;
  for (int k = 2; k <= p; ++k) c *= k;
  return c;
}

}  // namespace

void Basis::eval(const Point& xi, std::span<double> out) const {
  if (out.size() != size()) throw InvalidArgument("Basis::eval: output size mismatch");
  const auto l = barycentric(xi);
  const int nl = dim_ + 1;
  double f[3][4], df[3][4];
  for (int k = 0; k < nl; ++k) factors(kind_, p_, l[static_cast<std::size_t>(k)], f[k], df[k]);
  const double c = prefactor(kind_, p_);
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    double v = c;
    for (int k = 0; k < nl; ++k) v *= f[k][alpha_[i][static_cast<std::size_t>(k)]];
    out[i] = v;
  }
}

void Basis::eval_grad(const Point& xi, std::span<Point> out) const {
  if (out.size() != size()) throw InvalidArgument("Basis::eval_grad: output size mismatch");
  const auto l = barycentric(xi);
  const int nl = dim_ + 1;
  double f[3][4], df[3][4];
  for (int k = 0; k < nl; ++k) factors(kind_, p_, l[static_cast<std::size_t>(k)], f[k], df[k]);
  const double c = prefactor(kind_, p_);
  // Reference gradients of the barycentric coordinates.
  static constexpr Point dl2[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
  static constexpr Point dl1[2] = {{-1.0, 0.0}, {1.0, 0.0}};
  const Point* dl = dim_ == 1 ? dl1 : dl2;
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    const auto& a = alpha_[i];
    Point g{0.0, 0.0};
    for (int k = 0; k < nl; ++k) {
      double d = c * df[k][a[static_cast<std::size_t>(k)]];
      for (int j = 0; j < nl; ++j)
        if (j != k) d *= f[j][a[static_cast<std::size_t>(j)]];
      g.x += d * dl[k].x;
      g.y += d * dl[k].y;
    }
    out[i] = g;
  }
}

std::vector<double> Basis::eval(const Point& xi) const {
  std::vector<double> v(size());
  eval(xi, v);
  return v;
}

std::vector<Point> Basis::eval_grad(const Point& xi) const {
  std::vector<Point> g(size());
  eval_grad(xi, g);
  return g;
}

}  // namespace sbpcg
