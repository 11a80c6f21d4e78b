// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cmath>

#include "bubblelab/basis.hpp"
#include "bubblelab/dispersion.hpp"
#include "bubblelab/kernels.hpp"

using namespace bubble;

namespace {

Eigen::VectorXd coefficients(int J) {
  Eigen::VectorXd c(J);
  for (int j = 0; j < J; ++j) c[j] = std::pow(-1.0, j) / ((j + 1.0) * (j + 1.0));
  return c;
}

template <bool Parallel>
void BM_Synthesize(benchmark::State& st) {
  const int J = static_cast<int>(st.range(0)), panels = static_cast<int>(st.range(1));
  const auto modes = make_mode_table(J, panels);
  const Eigen::VectorXd c = coefficients(J);
  kernels::Fields f;
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::synthesize_omp(*modes, c, f);
    else
      kernels::synthesize_serial(*modes, c, f);
    benchmark::DoNotOptimize(f.u.data());
  }
  st.SetItemsProcessed(st.iterations() * J * (panels + 1));
}

template <bool Parallel>
void BM_Project(benchmark::State& st) {
  const int J = static_cast<int>(st.range(0)), panels = static_cast<int>(st.range(1));
  const auto modes = make_mode_table(J, panels);
  Eigen::VectorXd f = modes->quad.y.unaryExpr([](double y) { return std::exp(y) * (1 - y); });
  Eigen::VectorXd out;
  for (auto _ : st) {
    if constexpr (Parallel)
      kernels::project_omp(*modes, f, out);
    else
      kernels::project_serial(*modes, f, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * J * (panels + 1));
}

template <bool Parallel>
void BM_FindRoots(benchmark::State& st) {
  const ModelParams p = canonical_params();
  const Equilibrium eq = solve_equilibrium(p, canonical_mass());
  const Box box = default_box(p, eq, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(find_roots(p, eq, box, 100000, Parallel).size());
}

}  // namespace

BENCHMARK(BM_Synthesize<false>)->Args({16, 512})->Args({64, 4096})->Args({256, 16384});
BENCHMARK(BM_Synthesize<true>)->Args({16, 512})->Args({64, 4096})->Args({256, 16384});
BENCHMARK(BM_Project<false>)->Args({16, 512})->Args({64, 4096})->Args({256, 16384});
BENCHMARK(BM_Project<true>)->Args({16, 512})->Args({64, 4096})->Args({256, 16384});
BENCHMARK(BM_FindRoots<false>)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindRoots<true>)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
