// Microbenchmarks for the hot paths: basis enumeration, ladder assembly,
// the Taylor exponential-apply kernel, the permanent, the one-body lift,
// and Monte Carlo trace throughput.

#include <benchmark/benchmark.h>

#include "bosefock/basis.hpp"
#include "bosefock/displacement.hpp"
#include "bosefock/gibbs.hpp"
#include "bosefock/ladder.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/quantization.hpp"
#include "bosefock/trace.hpp"

#include <cmath>
#include <vector>

using namespace bosefock;

namespace {

void BM_BasisEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int cutoff = static_cast<int>(state.range(1));
  for (auto _ : state) {
    TruncatedBasis basis(n, cutoff);
    benchmark::DoNotOptimize(basis.dim());
  }
  state.SetLabel("dim=" + std::to_string(TruncatedBasis(n, cutoff).dim()));
}
BENCHMARK(BM_BasisEnumeration)->Args({1, 128})->Args({3, 24})->Args({6, 10});

void BM_LadderAssembly(benchmark::State& state) {
  const TruncatedBasis basis(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(creation(basis, 0).nnz());
  }
}
BENCHMARK(BM_LadderAssembly)->Args({2, 30})->Args({4, 12});

void BM_ExpApply(benchmark::State& state) {
  const TruncatedBasis basis(1, static_cast<int>(state.range(0)));
  const SparseOperator generator = displacement_generator(basis, {cplx(0.4, 0.2)});
  StateVector vacuum(static_cast<std::size_t>(basis.dim()), cplx(0.0, 0.0));
  vacuum[0] = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exp_apply(generator, vacuum));
  }
}
BENCHMARK(BM_ExpApply)->Arg(40)->Arg(80);

void BM_Permanent(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<std::vector<cplx>> gram(m, std::vector<cplx>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      gram[r][c] = cplx(std::cos(0.7 * (r + 1) * (c + 1)),
                        std::sin(0.3 * (r - c)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(permanent(gram));
  }
}
BENCHMARK(BM_Permanent)->Arg(6)->Arg(10)->Arg(12);

void BM_GammaSubstitution(benchmark::State& state) {
  const TruncatedBasis basis(2, static_cast<int>(state.range(0)));
  DenseMatrix h(2);
  h.at(0, 0) = cplx(0.0, 0.4);
  h.at(1, 1) = cplx(0.0, -0.2);
  h.at(0, 1) = cplx(0.1, 0.3);
  h.at(1, 0) = cplx(-0.1, 0.3);
  const DenseMatrix v = pade_expm(h);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_substitution(basis, v).nnz());
  }
}
BENCHMARK(BM_GammaSubstitution)->Arg(8)->Arg(12);

void BM_TraceMonteCarlo(benchmark::State& state) {
  const TruncatedBasis basis(1, 30);
  DenseMatrix h(1);
  h.at(0, 0) = std::log(2.0);
  const SparseOperator x =
      exp_neg_beta_dgamma(basis, thermal_spectrum(OneBodyOperator(h), 1.0, 0.0));
  const std::uint64_t samples = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        trace_coherent_mc(basis, x, 1, samples, seed++).estimate);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(samples));
}
BENCHMARK(BM_TraceMonteCarlo)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
