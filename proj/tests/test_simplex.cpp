#include <gtest/gtest.h>

#include <random>

#include "ptlab/errors.hpp"
#include "ptlab/simplex.hpp"

using namespace ptlab;
using namespace ptlab::lp;

namespace {

Matrix to_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m;
  for (auto r : rows) {
    m.emplace_back();
    for (long v : r) m.back().emplace_back(v);
  }
  return m;
}

std::vector<Rational> vec(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6).
  const auto sol = maximize(to_matrix({{1, 0}, {0, 2}, {3, 2}}), vec({4, 12, 18}), vec({3, 5}));
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, 36);
  EXPECT_EQ(sol.primal, vec({2, 6}));
  // Strong duality: b . y = c . x.
  Rational by = 0;
  for (std::size_t i = 0; i < 3; ++i) by += sol.dual[i] * vec({4, 12, 18})[i];
  EXPECT_EQ(by, 36);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  // x <= -1 with x >= 0.
  EXPECT_EQ(maximize(to_matrix({{1}}), vec({-1}), vec({1})).status, LpStatus::kInfeasible);
  // max x, -x <= 1.
  EXPECT_EQ(maximize(to_matrix({{-1}}), vec({1}), vec({1})).status, LpStatus::kUnbounded);
}

TEST(Simplex, NegativeRightHandSideFeasible) {
  // max -x, -x <= -2 (x >= 2) -> -2.
  const auto sol = maximize(to_matrix({{-1}}), vec({-2}), vec({-1}));
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, -2);
}

TEST(Simplex, DegenerateDoesNotCycle) {
  // Beale's classic cycling example under naive pricing.
  Matrix a(3, std::vector<Rational>(4));
  a[0] = {Rational(1, 4), Rational(-8), Rational(-1), Rational(9)};
  a[1] = {Rational(1, 2), Rational(-12), Rational(-1, 2), Rational(3)};
  a[2] = {Rational(0), Rational(0), Rational(1), Rational(0)};
  const std::vector<Rational> b{0, 0, 1};
  const std::vector<Rational> c{Rational(3, 4), Rational(-20), Rational(1, 2), Rational(-6)};
  const auto sol = maximize(a, b, c);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, Rational(5, 4));
}

TEST(MatrixGame, MatchingPenniesStyle) {
  // Rows = minimizer. Payoff identity 2x2: value 1/2, both uniform.
  const auto sol = solve_matrix_game(to_matrix({{1, 0}, {0, 1}}));
  EXPECT_EQ(sol.value, Rational(1, 2));
  EXPECT_EQ(sol.column_mixture, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(sol.row_mixture, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
}

TEST(MatrixGame, ZeroRowPinsValue) {
  const auto sol = solve_matrix_game(to_matrix({{1, 1}, {0, 0}}));
  EXPECT_EQ(sol.value, 0);
}

TEST(MatrixGame, RejectsBadInput) {
  EXPECT_THROW(solve_matrix_game({}), InputError);
  EXPECT_THROW(solve_matrix_game(to_matrix({{1, -1}})), InputError);
  EXPECT_THROW(solve_matrix_game(to_matrix({{1, 0}, {1}})), InputError);
}

TEST(MatrixGame, RandomGamesSatisfyMinimax) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 2 + rng() % 5, cols = 2 + rng() % 6;
    Matrix m(rows, std::vector<Rational>(cols));
    for (auto& r : m)
      for (auto& v : r) v = static_cast<long>(rng() % 4);
    bool zero_row = false;
    for (auto& r : m) {
      bool all_zero = true;
      for (auto& v : r) all_zero = all_zero && sgn(v) == 0;
      zero_row = zero_row || all_zero;
    }
    const auto sol = solve_matrix_game(m);
    if (zero_row) {
      EXPECT_EQ(sol.value, 0);
      continue;
    }
    Rational psum = 0, qsum = 0;
    for (const auto& p : sol.column_mixture) {
      EXPECT_GE(sgn(p), 0);
      psum += p;
    }
    for (const auto& q : sol.row_mixture) qsum += q;
    EXPECT_EQ(psum, 1);
    EXPECT_EQ(qsum, 1);
    // Column mixture guarantees at least the value on every row, row mixture
    // holds every column to at most the value.
    for (std::size_t r = 0; r < rows; ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < cols; ++c) s += m[r][c] * sol.column_mixture[c];
      EXPECT_GE(s, sol.value);
    }
    for (std::size_t c = 0; c < cols; ++c) {
      Rational s = 0;
      for (std::size_t r = 0; r < rows; ++r) s += m[r][c] * sol.row_mixture[r];
      EXPECT_LE(s, sol.value);
    }
  }
}
