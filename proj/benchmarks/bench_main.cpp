#include <benchmark/benchmark.h>

#include "ptlab/catalog.hpp"
#include "ptlab/classical.hpp"
#include "ptlab/imperfection.hpp"
#include "ptlab/ks_set.hpp"
#include "ptlab/referee.hpp"

using namespace ptlab;

static void BM_EnumerateParity(benchmark::State& state) {
  const auto game = catalog::build_parity_game(static_cast<int>(state.range(0)), 1).game;
  for (auto _ : state) benchmark::DoNotOptimize(classical::optimal_success_proportion(game).omega_tilde);
}
BENCHMARK(BM_EnumerateParity)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

static void BM_LinearProgramMagicSquare(benchmark::State& state) {
  const auto game = catalog::build_magic_square_game().game;
  for (auto _ : state) benchmark::DoNotOptimize(classical::optimal_success_probability(game).omega);
}
BENCHMARK(BM_LinearProgramMagicSquare)->Unit(benchmark::kMillisecond);

static void BM_ErrorFreeParity(benchmark::State& state) {
  const auto game = catalog::build_parity_game(static_cast<int>(state.range(0)), 1).game;
  for (auto _ : state) benchmark::DoNotOptimize(classical::optimal_errorfree_classical(game).value);
}
BENCHMARK(BM_ErrorFreeParity)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_CertaintyCheck(benchmark::State& state) {
  const auto b = catalog::build_dj_game(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_certainty(b.game, b.strategy).worst_losing_probability);
}
BENCHMARK(BM_CertaintyCheck)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_NoiseThreshold(benchmark::State& state) {
  const auto b = catalog::build_parity_game(static_cast<int>(state.range(0)), 1);
  const imperfection::ImperfectQuantum model(b.game, b.strategy);
  const double omega = classical::optimal_success_probability(b.game).omega->get_d();
  for (auto _ : state) benchmark::DoNotOptimize(imperfection::noise_threshold(model, omega).value);
}
BENCHMARK(BM_NoiseThreshold)->DenseRange(3, 8);

static void BM_QuantumRounds(benchmark::State& state) {
  const auto b = catalog::build_magic_square_game();
  const auto exec = referee::PlayerExecutor::quantum(b.strategy);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        referee::run_rounds(b.game, exec, 1000, referee::QuestionMode::kUniformOverPromise, 1).wins);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_QuantumRounds)->Unit(benchmark::kMillisecond);

static void BM_KSSearch(benchmark::State& state) {
  const auto& set = ks::shipped_cabello18();
  for (auto _ : state) benchmark::DoNotOptimize(ks::verify_ks_property(set).nodes);
}
BENCHMARK(BM_KSSearch);

BENCHMARK_MAIN();
