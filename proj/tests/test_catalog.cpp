#include <gtest/gtest.h>

#include <cmath>

#include "ptlab/catalog.hpp"
#include "ptlab/errors.hpp"

using namespace ptlab;
using namespace ptlab::catalog;

namespace {

void expect_certain(const GameBundle& b, double tol = 1e-9) {
  const auto report = verify_certainty(b.game, b.strategy);
  EXPECT_GT(report.questions, 0u);
  EXPECT_LE(report.worst_losing_probability, tol)
      << b.game.name() << " loses on " << b.game.format_question(report.worst_question);
}

double total_probability(const std::map<Answer, double>& dist) {
  double s = 0;
  for (const auto& [a, p] : dist) s += p;
  return s;
}

}  // namespace

TEST(Parity, StructureAndNames) {
  EXPECT_EQ(build_mermin_ghz().game.name(), "ghz");
  const auto g = build_parity_game(4, 2).game;
  EXPECT_EQ(g.name(), "parity");
  EXPECT_EQ(g.players(), 4u);
  EXPECT_EQ(g.input_alphabet(0).size(), 4u);
  // Sum 1+1+1+1 = 4 is divisible by 4 with quotient 1: odd parity needed.
  EXPECT_EQ(g.is_winning(Question{1, 1, 1, 1}, Answer{1, 0, 0, 0}), RoundOutcome::kWin);
  EXPECT_EQ(g.is_winning(Question{1, 1, 1, 1}, Answer{0, 0, 0, 0}), RoundOutcome::kLose);
  EXPECT_EQ(g.is_winning(Question{1, 1, 1, 0}, Answer{0, 0, 0, 0}), RoundOutcome::kNoPromise);
  EXPECT_THROW(build_parity_game(2, 1), InputError);
  EXPECT_THROW(build_parity_game(3, 0), InputError);
}

TEST(Parity, CertaintyAcrossFamily) {
  expect_certain(build_mermin_ghz());
  for (int n = 4; n <= 6; ++n) expect_certain(build_parity_game(n, 1));
  expect_certain(build_parity_game(3, 2));
  expect_certain(build_parity_game(4, 2));
}

TEST(Parity, GhzAnswerDistributionIsUniformOverCorrectParity) {
  const auto b = build_mermin_ghz();
  const auto dist = b.strategy.answer_distribution(Question{0, 1, 1});
  EXPECT_NEAR(total_probability(dist), 1.0, 1e-12);
  EXPECT_EQ(dist.size(), 4u);
  for (const auto& [a, p] : dist) {
    EXPECT_EQ((a[0] + a[1] + a[2]) % 2, 1);
    EXPECT_NEAR(p, 0.25, 1e-12);
  }
}

TEST(ExtendedParity, InputBitsAndCertainty) {
  EXPECT_EQ(extended_parity_input_bits(3), 1);
  EXPECT_EQ(extended_parity_input_bits(4), 1);
  EXPECT_EQ(extended_parity_input_bits(5), 2);
  EXPECT_EQ(extended_parity_input_bits(8), 2);
  EXPECT_EQ(extended_parity_input_bits(9), 3);
  const auto b = build_extended_parity(5);
  EXPECT_EQ(b.game.name(), "extended-parity");
  EXPECT_EQ(b.game.params().at("l"), 2);
  expect_certain(build_extended_parity(4));
  expect_certain(b);
}

TEST(DeutschJozsa, PromiseAndWinning) {
  const auto g = build_dj_game(2).game;  // 4-bit inputs
  EXPECT_TRUE(g.is_legitimate(Question{0b1010, 0b1010}));
  EXPECT_TRUE(g.is_legitimate(Question{0b1010, 0b0110}));
  EXPECT_FALSE(g.is_legitimate(Question{0b1010, 0b1011}));
  EXPECT_EQ(g.is_winning(Question{5, 5}, Answer{2, 2}), RoundOutcome::kWin);
  EXPECT_EQ(g.is_winning(Question{5, 5}, Answer{2, 1}), RoundOutcome::kLose);
  EXPECT_EQ(g.is_winning(Question{0, 3}, Answer{2, 2}), RoundOutcome::kLose);
  EXPECT_EQ(g.is_winning(Question{0, 3}, Answer{2, 1}), RoundOutcome::kWin);
  EXPECT_EQ(g.input_alphabet(0).label(1), "1000");
  EXPECT_THROW(build_dj_game(0), InputError);
  EXPECT_THROW(build_dj_game(5), InputError);
}

TEST(DeutschJozsa, Certainty) {
  for (int m = 1; m <= 3; ++m) expect_certain(build_dj_game(m));
}

TEST(MagicSquare, WinningRelation) {
  const auto g = build_magic_square_game().game;
  EXPECT_EQ(g.input_alphabet(0).label(0), "1");
  // Row 1 = 011 (even), column 1 = 001 (odd), shared cell: row[0] = 0, col[0] = 0.
  EXPECT_EQ(g.is_winning(Question{0, 0}, Answer{0b011, 0b001}), RoundOutcome::kWin);
  EXPECT_EQ(g.is_winning(Question{0, 0}, Answer{0b111, 0b001}), RoundOutcome::kLose);  // odd row
  EXPECT_EQ(g.is_winning(Question{0, 0}, Answer{0b011, 0b011}), RoundOutcome::kLose);  // even column
  EXPECT_EQ(g.is_winning(Question{0, 0}, Answer{0b101, 0b100}), RoundOutcome::kWin);
  EXPECT_EQ(g.question_space_size(), 9u);
}

TEST(MagicSquare, CertaintyAndParities) {
  const auto b = build_magic_square_game();
  expect_certain(b);
  for (Symbol x = 0; x < 3; ++x)
    for (Symbol y = 0; y < 3; ++y)
      for (const auto& [a, p] : b.strategy.answer_distribution(Question{x, y})) {
        EXPECT_EQ(std::popcount(static_cast<unsigned>(a[0])) % 2, 0);
        EXPECT_EQ(std::popcount(static_cast<unsigned>(a[1])) % 2, 1);
      }
}

TEST(MagicSquare, RowTwoColumnThreeState) {
  // Applying Alice's row-2 and Bob's column-3 transforms to the shared state
  // gives (1/2sqrt2)[i|0000> - |0010> - i|0101> + |0111> + i|1001> + |1011>
  // - i|1100> - |1110>] (basis |a1 a2 b1 b2>).
  const auto b = build_magic_square_game();
  const auto& ua = std::get<quantum::Unitary>(b.strategy.program(0, 1)->front());
  const auto& ub = std::get<quantum::Unitary>(b.strategy.program(1, 2)->front());
  const auto state = quantum::apply_local(quantum::apply_local(b.strategy.initial_state(), 0, ua), 1, ub);
  const double c = 1 / (2 * std::sqrt(2.0));
  const quantum::Complex i{0, 1};
  std::vector<quantum::Complex> expected(16, 0.0);
  expected[0b0000] = i * c;
  expected[0b0010] = -c;
  expected[0b0101] = -i * c;
  expected[0b0111] = c;
  expected[0b1001] = i * c;
  expected[0b1011] = c;
  expected[0b1100] = -i * c;
  expected[0b1110] = -c;
  for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(state.amplitude(k) - expected[k]), 0.0, 1e-12) << k;
}

TEST(Matching, Enumeration) {
  EXPECT_EQ(enumerate_matchings(2).size(), 1u);
  EXPECT_EQ(enumerate_matchings(4).size(), 3u);
  EXPECT_EQ(enumerate_matchings(6).size(), 15u);
  EXPECT_EQ(enumerate_matchings(8).size(), 105u);
  const auto m4 = enumerate_matchings(4);
  EXPECT_EQ(m4[0].pairs, (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(m4[2].pairs, (std::vector<std::pair<int, int>>{{0, 3}, {1, 2}}));
  EXPECT_THROW(enumerate_matchings(3), InputError);
  EXPECT_THROW(enumerate_matchings(12, 100), CapacityError);
}

TEST(Matching, WinningRelation) {
  const auto g = build_matching_game(4).game;
  EXPECT_EQ(matching_output_bits(4), 2);
  EXPECT_EQ(matching_output_bits(6), 3);
  // Matching 0 = {0,1},{2,3}. x = 0b0001: x_0 ^ x_1 = 1; alpha ^ beta = 1, so
  // (a ^ b) must have odd low bit.
  EXPECT_EQ(g.is_winning(Question{0b0001, 0}, Answer{0b01, matching_bob_symbol(4, 0, 0b00)}), RoundOutcome::kWin);
  EXPECT_EQ(g.is_winning(Question{0b0001, 0}, Answer{0b00, matching_bob_symbol(4, 0, 0b00)}), RoundOutcome::kLose);
  EXPECT_EQ(matching_inputs(g).size(), 3u);
  EXPECT_EQ(g.question_space_size(), 16u * 3u);
}

TEST(Matching, Certainty) {
  for (int m : {2, 4, 6}) expect_certain(build_matching_game(m));
}

TEST(Colouring, InputsPairsThenContexts) {
  const auto& set = ks::shipped_cabello18();
  const auto inputs = colouring_alice_inputs(set);
  ASSERT_EQ(inputs.size(), 63u + 9u);
  EXPECT_EQ(inputs.front().size(), 2u);
  EXPECT_EQ(inputs.back().size(), 4u);
}

TEST(Colouring, PromiseAndCertainty) {
  const auto b = build_colouring_game(ks::shipped_cabello18());
  const auto legit = legitimate_questions(b.game);
  EXPECT_EQ(legit.size(), 63u * 2 + 9u * 4);
  expect_certain(b);
}

TEST(Colouring, RefusesColourableSet) {
  const ks::KSSet control("control", 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}});
  EXPECT_THROW(build_colouring_game(control), ValidationError);
  EXPECT_NO_THROW(build_colouring_game(control, false));
}

TEST(Boyer, PromiseAndWinning) {
  const auto g = build_boyer_game(3, 2).game;
  EXPECT_EQ(g.input_alphabet(0).size(), 4u);
  EXPECT_TRUE(g.is_legitimate(Question{1, 1, 0}));
  EXPECT_FALSE(g.is_legitimate(Question{1, 0, 0}));
  // Sum 6, half 3 = 1 mod 2.
  EXPECT_EQ(g.is_winning(Question{3, 3, 0}, Answer{1, 0, 0}), RoundOutcome::kWin);
  EXPECT_EQ(g.is_winning(Question{3, 3, 0}, Answer{1, 1, 0}), RoundOutcome::kLose);
  EXPECT_THROW(build_boyer_game(3, 3), InputError);
}

TEST(Boyer, Certainty) {
  expect_certain(build_boyer_game(3, 2));
  expect_certain(build_boyer_game(3, 4));
  expect_certain(build_boyer_game(4, 2));
}

TEST(RandomGame, ReproducibleAndSmall) {
  const auto a = build_random_game(42), b = build_random_game(42);
  EXPECT_EQ(a.players(), b.players());
  EXPECT_EQ(legitimate_questions(a), legitimate_questions(b));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = build_random_game(seed);
    EXPECT_GE(g.players(), 2u);
    EXPECT_LE(g.players(), 3u);
    EXPECT_FALSE(legitimate_questions(g).empty());
  }
}

TEST(Strategies, DetectorCounts) {
  EXPECT_EQ(build_mermin_ghz().strategy.detectors(0, 1), 1);
  EXPECT_EQ(build_magic_square_game().strategy.detectors(1, 0), 2);
  EXPECT_EQ(build_dj_game(3).strategy.detectors(0, 5), 3);
  // Bob: one subspace measurement plus one per qubit.
  EXPECT_EQ(build_matching_game(4).strategy.detectors(1, 0), 3);
}
