#include <gtest/gtest.h>

#include <cmath>

#include "ptlab/catalog.hpp"
#include "ptlab/errors.hpp"
#include "ptlab/imperfection.hpp"
#include "ptlab/referee.hpp"

using namespace ptlab;
using namespace ptlab::imperfection;

namespace {

double parity_noisy(double p, int n) { return (1 + std::pow(2 * p - 1, n)) / 2; }

double parity_p_star(int n) {
  const double omega = 0.5 + std::pow(2.0, -std::ceil(n / 2.0));
  return (1 + std::pow(2 * omega - 1, 1.0 / n)) / 2;
}

}  // namespace

TEST(Params, RangeChecked) {
  EXPECT_THROW(NoiseParams(1.5), InputError);
  EXPECT_THROW(NoiseParams(-0.1), InputError);
  EXPECT_THROW(EfficiencyParams(1.01), InputError);
  EXPECT_NO_THROW(EfficiencyParams(0.0));
}

TEST(Noise, ParityClosedForm) {
  for (int n = 3; n <= 6; ++n) {
    const auto b = catalog::build_parity_game(n, 1);
    const ImperfectQuantum model(b.game, b.strategy);
    ASSERT_TRUE(model.supports_noise());
    for (double p : {0.5, 0.6, 0.75, 0.9, 0.99, 1.0})
      EXPECT_NEAR(model.noisy_success(p), parity_noisy(p, n), 1e-12) << n << " " << p;
  }
}

TEST(Noise, MagicSquareIsSupportedAndPerfectAtOne) {
  const auto b = catalog::build_magic_square_game();
  const ImperfectQuantum model(b.game, b.strategy);
  EXPECT_TRUE(model.supports_noise());
  EXPECT_NEAR(model.noisy_success(1.0), 1.0, 1e-12);
  EXPECT_LT(model.noisy_success(0.9), 1.0);
}

TEST(Noise, UnsupportedForNonBitOutputs) {
  const auto b = catalog::build_colouring_game(ks::shipped_cabello18());
  const ImperfectQuantum model(b.game, b.strategy);
  EXPECT_FALSE(model.supports_noise());
  EXPECT_THROW(model.noisy_success(0.9), UnsupportedModelError);
  EXPECT_THROW(noise_threshold(model, 0.5), UnsupportedModelError);
  // Efficiency still works.
  EXPECT_NEAR(model.inefficient_outcomes(1.0).win, 1.0, 1e-12);
}

TEST(Efficiency, GhzPowers) {
  const auto b = catalog::build_mermin_ghz();
  const ImperfectQuantum model(b.game, b.strategy);
  for (double eta : {0.0, 0.3, 0.8, 1.0}) {
    const auto o = model.inefficient_outcomes(eta);
    EXPECT_NEAR(o.win, std::pow(eta, 3), 1e-12);
    EXPECT_NEAR(o.draw, 1 - std::pow(eta, 3), 1e-12);
    EXPECT_NEAR(o.lose, 0.0, 1e-12);
  }
}

TEST(Efficiency, MagicSquareCountsTwoDetectorsEach) {
  const auto b = catalog::build_magic_square_game();
  const ImperfectQuantum model(b.game, b.strategy);
  EXPECT_EQ(model.detectors(0), (std::vector<int>{2, 2}));
  EXPECT_NEAR(model.inefficient_outcomes(0.9).win, std::pow(0.9, 4), 1e-12);
}

TEST(Combined, OutcomesSumToOne) {
  const auto b = catalog::build_parity_game(4, 1);
  const ImperfectQuantum model(b.game, b.strategy);
  for (std::size_t q = 0; q < model.questions().size(); ++q) {
    const auto o = model.outcomes(q, NoiseParams(0.8), EfficiencyParams(0.7));
    EXPECT_NEAR(o.win + o.draw + o.lose, 1.0, 1e-12);
    EXPECT_NEAR(o.draw, 1 - std::pow(0.7, 4), 1e-12);
    EXPECT_NEAR(o.win, std::pow(0.7, 4) * parity_noisy(0.8, 4), 1e-12);
  }
  const auto u = model.uniform_outcomes(NoiseParams(1.0), EfficiencyParams(1.0));
  EXPECT_NEAR(u.win, 1.0, 1e-12);
}

TEST(Thresholds, NoiseMatchesClosedForm) {
  for (int n = 3; n <= 5; ++n) {
    const auto b = catalog::build_parity_game(n, 1);
    const auto bounds = classical::optimal_success_probability(b.game);
    const auto t = noise_threshold(b.game, b.strategy, bounds);
    ASSERT_TRUE(t.found) << t.note;
    EXPECT_NEAR(t.value, parity_p_star(n), 1e-6) << n;
    EXPECT_LE(t.bracket_lo, t.value);
    EXPECT_GE(t.bracket_hi, t.value);
    EXPECT_LE(t.bracket_hi - t.bracket_lo, 1e-9);
  }
}

TEST(Thresholds, EfficiencyMatchesRoot) {
  const auto ghz = catalog::build_mermin_ghz();
  const auto e3 = optimal_errorfree_classical(ghz.game);
  const auto t3 = efficiency_threshold(ghz.game, ghz.strategy, e3.value);
  ASSERT_TRUE(t3.found);
  EXPECT_NEAR(t3.value, std::pow(0.5, 1.0 / 3), 1e-6);
  const auto p4 = catalog::build_parity_game(4, 1);
  const auto t4 = efficiency_threshold(p4.game, p4.strategy, Rational(1, 4));
  EXPECT_NEAR(t4.value, std::sqrt(0.5), 1e-6);
}

TEST(Thresholds, NoCrossoverReportsNote) {
  const auto ghz = catalog::build_mermin_ghz();
  const ImperfectQuantum model(ghz.game, ghz.strategy);
  // Noisy success never drops below 1/2, so a target of 0.4 is never crossed.
  const auto t = noise_threshold(model, 0.4);
  EXPECT_FALSE(t.found);
  EXPECT_FALSE(t.note.empty());
}

TEST(Sweep, RowsFollowGrid) {
  const auto ghz = catalog::build_mermin_ghz();
  const ImperfectQuantum model(ghz.game, ghz.strategy);
  const auto rows = sweep(model, SweepParameter::kEfficiency, {0.0, 0.5, 1.0}, 0.5);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].param_name, "eta");
  EXPECT_EQ(rows[1].game, "ghz");
  EXPECT_NEAR(rows[1].quantum_win, 0.125, 1e-12);
  EXPECT_NEAR(rows[1].quantum_draw, 0.875, 1e-12);
  EXPECT_EQ(rows[2].classical_bound, 0.5);
  const auto noise = sweep(model, SweepParameter::kNoise, {0.75}, 0.75);
  EXPECT_EQ(noise[0].param_name, "p");
  EXPECT_NEAR(noise[0].quantum_win, parity_noisy(0.75, 3), 1e-12);
}

TEST(MonteCarlo, NoisyExecutorMatchesExact) {
  const auto ghz = catalog::build_mermin_ghz();
  const double p = 0.85, eta = 0.9;
  const auto exec = referee::PlayerExecutor::noisy_quantum(ghz.strategy, NoiseParams(p), EfficiencyParams(eta));
  const std::uint64_t rounds = 100000;
  const auto stats = referee::run_rounds(ghz.game, exec, rounds, referee::QuestionMode::kUniformOverPromise, 3);
  const double win = std::pow(eta, 3) * parity_noisy(p, 3);
  const double draw = 1 - std::pow(eta, 3);
  const double n = static_cast<double>(stats.rounds_legitimate);
  EXPECT_NEAR(stats.wins / n, win, 4 * std::sqrt(win * (1 - win) / n));
  EXPECT_NEAR(stats.draws / n, draw, 4 * std::sqrt(draw * (1 - draw) / n));
}
