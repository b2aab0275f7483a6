#include <benchmark/benchmark.h>

#include "qberry/berry.hpp"
#include "qberry/dynamics.hpp"
#include "qberry/majorana.hpp"
#include "qberry/random.hpp"

namespace {

using namespace qberry;

void BM_EigHermitian3(benchmark::State& state) {
  Rng rng(1);
  std::vector<CMat3> hs;
  for (int k = 0; k < 256; ++k) hs.push_back(random_hermitian(rng).matrix());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian3(hs[i++ & 255]));
}
BENCHMARK(BM_EigHermitian3);

void BM_Propagator(benchmark::State& state) {
  Rng rng(2);
  const CMat3 h = random_hermitian(rng).matrix();
  double t = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(propagator(h, t += 1e-3));
}
BENCHMARK(BM_Propagator);

void BM_StarsFromState(benchmark::State& state) {
  Rng rng(3);
  std::vector<QutritState> ps;
  for (int k = 0; k < 256; ++k) ps.push_back(random_state(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(stars_from_state(ps[i++ & 255]));
}
BENCHMARK(BM_StarsFromState);

void BM_DiscretePhase(benchmark::State& state) {
  const StateLoop loop = exchange_loop(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(discrete_geometric_phase(loop));
}
BENCHMARK(BM_DiscretePhase)->Arg(400)->Arg(4000);

void BM_TrackStars(benchmark::State& state) {
  const StateLoop loop = exchange_loop(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(track_stars(loop));
}
BENCHMARK(BM_TrackStars)->Arg(400);

void BM_ClassifyExchange(benchmark::State& state) {
  const StateLoop loop = exchange_loop(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_and_verify(loop));
}
BENCHMARK(BM_ClassifyExchange)->Arg(400);

void BM_ClassifyMorph(benchmark::State& state) {
  const StateLoop loop = morph_eigenstate_loop(state.range(0) / 1000.0, 400);
  for (auto _ : state) benchmark::DoNotOptimize(classify_and_verify(loop));
}
BENCHMARK(BM_ClassifyMorph)->Arg(500)->Arg(1000);

void BM_AAPhase(benchmark::State& state) {
  const SpinFieldReal f(0.3, -1.2, 0.7);
  Rng rng(4);
  const QutritState q = random_quadrupolar_state(rng);
  for (auto _ : state) benchmark::DoNotOptimize(aa_phase(f, q));
}
BENCHMARK(BM_AAPhase);

}  // namespace

BENCHMARK_MAIN();
