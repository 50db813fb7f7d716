#pragma once

// Exact rational simplex (dictionary form with implicit slacks) for
//   maximize c.x  subject to  A x <= b,  x >= 0.
// Dantzig pricing with a switch to Bland's rule after a run of degenerate
// pivots, so the method always terminates.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace ptlab::lp {

using Rational = mpq_class;
using Matrix = std::vector<std::vector<Rational>>;

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> primal;  ///< x, one per column of A
  std::vector<Rational> dual;    ///< y >= 0, one per row of A, with A^T y >= c
  std::size_t pivots = 0;
};

LpSolution maximize(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

/// Value and optimal mixture of a finite zero-sum game where the maximizer
/// picks a column and the minimizer a row of `payoff`:
///   value = max_p min_rows sum_j payoff[row][j] p_j.
struct MatrixGameSolution {
  Rational value;
  std::vector<Rational> column_mixture;  ///< optimal p, sums to 1
  std::vector<Rational> row_mixture;     ///< optimal minimizer strategy, sums to 1
  std::size_t pivots = 0;
};

/// Entries must be nonnegative. Solved exactly through the packing LP
///   max sum y  s.t.  payoff^T y <= 1, y >= 0,  value = 1 / optimum.
MatrixGameSolution solve_matrix_game(const Matrix& payoff);

}  // namespace ptlab::lp
