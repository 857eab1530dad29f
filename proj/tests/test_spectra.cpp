#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sbpcg/assembly.hpp"
#include "sbpcg/error.hpp"
#include "sbpcg/sat.hpp"
#include "sbpcg/spectra.hpp"

using namespace sbpcg;

TEST_CASE("extreme eigenvalues of a diagonal matrix") {
  const double d[] = {-3.0, 0.0, -1.0};
  const auto e = extreme_eigs(DenseMatrix::diagonal(d), 2);
  CHECK(e.negatives == std::vector<double>{-3.0, -1.0});
  CHECK(e.positives == std::vector<double>{0.0, -1.0});
  CHECK(e.all == std::vector<double>{-3.0, -1.0, 0.0});
}

TEST_CASE("extreme eigenvalues agree with the Jacobi oracle") {
  std::mt19937_64 rng(17);
  const auto a = oracle::random_symmetric(50, rng);
  const auto ref = oracle::jacobi_eigenvalues(a);
  const auto e = extreme_eigs(a, 5);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(e.all[i] - ref[i]) < 1e-10);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(e.negatives[i] - ref[i]) < 1e-10);
    CHECK(std::abs(e.positives[i] - ref[49 - i]) < 1e-10);
  }
  CHECK(e.max_residual < 1e-12);
}

TEST_CASE("pairing and near-zero helpers") {
  CHECK(pairing_defect({-2.0, -1.0, 0.0, 1.0, 2.0}) == 0.0);
  CHECK(pairing_defect({-2.0, 0.0, 1.5}) == doctest::Approx(0.5));
  CHECK(near_zero_max({-2.0, -1e-15, 3e-16, 0.5, 4.0}, 2) == doctest::Approx(1e-15));
}

TEST_CASE("Q + Q^T pairs and interior modes vanish") {
  auto mesh = std::make_shared<const Mesh>(unit_disk(2));
  for (auto kind : {BasisKind::lagrange, BasisKind::bernstein})
    for (int p = 1; p <= 3; ++p) {
      const FunctionSpace V(mesh, p, kind);
      const auto a = VelocityField::uniform({1.0, 0.0});
      const auto ops = assemble_scalar(V, a, 6, 6);
      const auto pi = scalar_sat_2d(V, a, {}, 6);
      const auto r = spectrum_report(ops, pi, 5);
      CHECK(r.stable);
      CHECK(r.lambda_max_sat <= 1e-12 * r.q_norm);
      CHECK(r.pairing_defect <= 1e-10);
      CHECK(r.interior_mode_max <= 1e-12);
      CHECK(r.neg_nosat.size() == 5);
      for (std::size_t i = 0; i < 5; ++i) CHECK(r.neg_nosat[i] == doctest::Approx(-r.pos_nosat[i]).epsilon(1e-9));
    }
}

TEST_CASE("mismatched edge quadrature is reported unstable") {
  auto mesh = std::make_shared<const Mesh>(unit_square(4));
  const FunctionSpace V(mesh, 3, BasisKind::bernstein);
  const auto a = VelocityField::uniform({1.0, 0.0});
  const auto ops = assemble_scalar(V, a, 6, 5);
  const auto pi = scalar_sat_2d(V, a, {}, 5);
  const auto r = spectrum_report(ops, pi, 3);
  CHECK_FALSE(r.stable);
  CHECK(r.lambda_max_sat > 0.0);
}

TEST_CASE("spectrum CSV layout") {
  auto mesh = std::make_shared<const Mesh>(unit_square(2));
  const FunctionSpace V(mesh, 1, BasisKind::lagrange);
  const auto a = VelocityField::uniform({1.0, 0.0});
  const auto ops = assemble_scalar(V, a, 6, 6);
  const auto pi = scalar_sat_2d(V, a, {}, 6);
  std::ostringstream os;
  write_spectrum_csv(os, spectrum_report(ops, pi, 3));
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      CHECK(line == "neg_noSAT,pos_noSAT,neg_SAT,pos_SAT");
      header = true;
    } else {
      ++rows;
    }
  }
  CHECK(rows == 3);
}
