#include <benchmark/benchmark.h>

#include "nrefl/dynamics.hpp"
#include "nrefl/gaudin.hpp"
#include "nrefl/rmatrix.hpp"
#include "nrefl/spin.hpp"

using namespace nrefl;

static void BM_CybeRational(benchmark::State& state) {
  const auto r = rational_r(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cybe_residual(r, Scalar(1), Scalar(2), Scalar(5)));
}
BENCHMARK(BM_CybeRational)->Arg(2)->Arg(3);

static void BM_CybeTrig(benchmark::State& state) {
  const auto r = trig_r();
  for (auto _ : state) benchmark::DoNotOptimize(cybe_residual(r, Scalar(2), Scalar(3), Scalar(5)));
}
BENCHMARK(BM_CybeTrig);

static void BM_PoissonBracket(benchmark::State& state) {
  const auto m = GaudinModel::bcl({Scalar(1), Scalar(2), Scalar(3)});
  const SpinPoly h1 = m.hamiltonian_residue(1), h2 = m.hamiltonian_residue(2);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_bracket(h1, h2));
}
BENCHMARK(BM_PoissonBracket);

static void BM_ResidueHamiltonian(benchmark::State& state) {
  const auto m = GaudinModel::three_reflection(1, 3, -1, 1, {Scalar(2), Scalar(4), Scalar(5)});
  for (auto _ : state) benchmark::DoNotOptimize(m.hamiltonian_residue(1));
}
BENCHMARK(BM_ResidueHamiltonian);

static void BM_Rk4Step(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  std::vector<Scalar> z;
  for (int i = 1; i <= sites; ++i) z.emplace_back(i);
  const auto m = GaudinModel::bcl(z);
  const VectorField f(m.hamiltonian_residue(1), sites);
  const auto x = default_initial_state(sites).x;
  for (auto _ : state) benchmark::DoNotOptimize(rk4_step(f, x, 1e-3));
}
BENCHMARK(BM_Rk4Step)->Arg(2)->Arg(3);
BENCHMARK_MAIN();
