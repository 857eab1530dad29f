// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <numbers>
#include <random>

#include "sbpcg/assembly.hpp"
#include "sbpcg/kernels.hpp"
#include "sbpcg/sparse.hpp"

using namespace sbpcg;

namespace {

const FunctionSpace& space(int n) {
  static std::map<int, std::unique_ptr<FunctionSpace>> cache;
  auto& s = cache[n];
  if (!s) s = std::make_unique<FunctionSpace>(std::make_shared<const Mesh>(unit_disk(n)), 3, BasisKind::bernstein);
  return *s;
}

const SparseMatrix& mass(int n) {
  static std::map<int, SparseMatrix> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, assemble_mass(space(n), 6)).first;
  return it->second;
}

std::vector<double> random_vector(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

VelocityField rotation() {
  VelocityField a;
  a.value = [](const Point& x) { return Point{2 * std::numbers::pi * x.y, -2 * std::numbers::pi * x.x}; };
  a.divergence = [](const Point&) { return 0.0; };
  return a;
}

template <bool Parallel>
void spmv(benchmark::State& st) {
  const auto& M = mass(static_cast<int>(st.range(0)));
  const auto x = random_vector(M.cols());
  std::vector<double> y(M.rows());
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::spmv(M.view(), x, y);
    else kernels::serial::spmv(M.view(), x, y);
    benchmark::DoNotOptimize(y.data());
  }
  st.counters["nnz"] = static_cast<double>(M.nnz());
}

template <bool Parallel>
void block_spmv(benchmark::State& st) {
  const auto& M = mass(static_cast<int>(st.range(0)));
  const std::size_t m = 6;
  const auto x = random_vector(m * M.cols());
  std::vector<double> y(m * M.rows());
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::block_spmv(M.view(), m, x, y);
    else kernels::serial::block_spmv(M.view(), m, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void dot(benchmark::State& st) {
  const auto x = random_vector(static_cast<std::size_t>(st.range(0)));
  const auto y = random_vector(x.size());
  for (auto _ : st) {
    double d = Parallel ? kernels::omp::dot(x, y) : kernels::serial::dot(x, y);
    benchmark::DoNotOptimize(d);
  }
}

template <Execution Ex>
void mass_assembly(benchmark::State& st) {
  const auto& V = space(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_mass(V, 6, Ex));
}

template <Execution Ex>
void stiffness_assembly(benchmark::State& st) {
  const auto& V = space(static_cast<int>(st.range(0)));
  const auto a = rotation();
  for (auto _ : st) benchmark::DoNotOptimize(assemble_stiffness(V, a, 6, 6, std::nullopt, Ex));
}

}  // namespace

BENCHMARK(spmv<false>)->Name("spmv/serial")->Arg(13)->Arg(29);
BENCHMARK(spmv<true>)->Name("spmv/omp")->Arg(13)->Arg(29);
BENCHMARK(block_spmv<false>)->Name("block_spmv_m6/serial")->Arg(13)->Arg(29);
BENCHMARK(block_spmv<true>)->Name("block_spmv_m6/omp")->Arg(13)->Arg(29);
BENCHMARK(dot<false>)->Name("dot/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(dot<true>)->Name("dot/omp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(mass_assembly<Execution::serial>)->Name("assemble_mass/serial")->Arg(13)->Unit(benchmark::kMillisecond);
BENCHMARK(mass_assembly<Execution::parallel>)->Name("assemble_mass/parallel")->Arg(13)->Unit(benchmark::kMillisecond);
BENCHMARK(stiffness_assembly<Execution::serial>)->Name("assemble_stiffness/serial")->Arg(13)->Unit(benchmark::kMillisecond);
BENCHMARK(stiffness_assembly<Execution::parallel>)->Name("assemble_stiffness/parallel")->Arg(13)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
