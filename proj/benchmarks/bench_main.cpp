#include <benchmark/benchmark.h>

#include "tsylv/backward_error.hpp"
#include "tsylv/conditioning.hpp"
#include "tsylv/random.hpp"
#include "tsylv/solver.hpp"

namespace {

using namespace tsylv;

ProblemTriple random_problem(Index n, std::uint64_t seed) {
  RngStream rng(seed);
  ProblemTriple p;
  p.a = gauss_matrix(n, rng) + 2.0 * static_cast<double>(n) * Matrix::Identity(n, n);
  p.b = gauss_matrix(n, rng);
  p.c = gauss_matrix(n, rng);
  return p;
}

void BM_KroneckerSolve(benchmark::State& state) {
  const ProblemTriple p = random_problem(state.range(0), 7);
  for (auto _ : state) {
    const SolverHandle handle(p);
    benchmark::DoNotOptimize(handle.solve(p.c));
  }
}
BENCHMARK(BM_KroneckerSolve)->Arg(4)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_TriangularSolve(benchmark::State& state) {
  const Index n = state.range(0);
  RngStream rng(11);
  SchurFactors f;
  f.w = random_orthogonal(n, rng);
  f.v = random_orthogonal(n, rng);
  f.t_a = gauss_matrix(n, rng).triangularView<Eigen::Upper>();
  f.t_a.diagonal().array() += 3.0;
  f.t_b = gauss_matrix(n, rng).triangularView<Eigen::Upper>();
  const Matrix c = gauss_matrix(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_triangular(f, c, Sign::plus));
}
BENCHMARK(BM_TriangularSolve)->Arg(4)->Arg(10)->Arg(40)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SceNormwise(benchmark::State& state) {
  const ProblemTriple p = random_problem(state.range(0), 13);
  const SolverHandle handle(p);
  const Matrix x = handle.solve(p.c);
  RngStream rng(17);
  for (auto _ : state) benchmark::DoNotOptimize(sce_normwise(handle, x, rng));
}
BENCHMARK(BM_SceNormwise)->Arg(4)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MuBar(benchmark::State& state) {
  const ProblemTriple p = random_problem(state.range(0), 19);
  const Matrix y = SolverHandle(p).solve(p.c);
  for (auto _ : state) benchmark::DoNotOptimize(mu_bar(p, y));
}
BENCHMARK(BM_MuBar)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
