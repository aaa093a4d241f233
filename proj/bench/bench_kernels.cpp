// One Jacobi sweep of Aberth corrections over all roots: serial reference
// against the OpenMP kernel, at the initial approximations of F_n.
#include <benchmark/benchmark.h>

#include <complex>
#include <numeric>
#include <vector>

#include "attractorlab/polygen.hpp"
#include "attractorlab/solver.hpp"

using namespace attractorlab;

namespace {

struct Sweep {
  detail::DeflatedProblem prob;
  std::vector<std::complex<double>> approx;
  std::vector<mp::Complex> roots;
  std::vector<std::size_t> active;
  std::vector<detail::RootUpdate> out;

  Sweep(std::size_t n, mp::Precision prec) {
    const auto p = partition_coeffs(n);
    prob.coeffs.assign(p.coeffs.begin() + 1, p.coeffs.end());  // p_0(n) = 0
    prob.set_precision(prec);
    approx = initial_approximations(prob.coeffs, InitialRadiusPolicy::kNewtonPolygon);
    for (const auto& a : approx) roots.emplace_back(a, prec);
    active.resize(approx.size());
    std::iota(active.begin(), active.end(), std::size_t{0});
  }
};

template <bool Parallel>
void BM_sweep(benchmark::State& state) {
  Sweep s(static_cast<std::size_t>(state.range(0)), static_cast<mp::Precision>(state.range(1)));
  for (auto _ : state) {
    if constexpr (Parallel)
      detail::aberth_corrections_parallel(s.prob, s.roots, s.approx, s.active, s.out);
    else
      detail::aberth_corrections_serial(s.prob, s.roots, s.approx, s.active, s.out);
    benchmark::DoNotOptimize(s.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {200, 1000, 2000})
    for (long prec : {128, 512}) b->Args({n, prec});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_sweep<false>)->Name("aberth_sweep/serial")->Apply(sizes);
BENCHMARK(BM_sweep<true>)->Name("aberth_sweep/parallel")->Apply(sizes);

BENCHMARK_MAIN();
