#include "ptlab/simplex.hpp"

#include <algorithm>

#include "ptlab/errors.hpp"

namespace ptlab::lp {

namespace {

class Dictionary {
 public:
  Dictionary(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c)
      : m_(b.size()), n_(c.size()), basic_(m_), nonbasic_(n_ + 1), d_(m_ + 2, std::vector<Rational>(n_ + 2)) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw InputError("constraint row has the wrong width");
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  LpSolution solve() {
    LpSolution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && sgn(d_[r][n_ + 1]) < 0) {
      pivot(r, n_);
      if (!run(2) || sgn(d_[m_ + 1][n_ + 1]) < 0) {
        out.status = LpStatus::kInfeasible;
        out.pivots = pivots_;
        return out;
      }
      for (std::size_t i = 0; i < m_; ++i)
        if (basic_[i] == -1) {
          std::size_t s = 0;
          for (std::size_t j = 1; j <= n_; ++j)
            if (d_[i][j] < d_[i][s] || (d_[i][j] == d_[i][s] && nonbasic_[j] < nonbasic_[s])) s = j;
          pivot(i, s);
        }
    }
    const bool bounded = run(1);
    out.pivots = pivots_;
    if (!bounded) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.objective = d_[m_][n_ + 1];
    out.primal.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_)
        out.primal[static_cast<std::size_t>(basic_[i])] = d_[i][n_ + 1];
    out.dual.assign(m_, Rational(0));
    for (std::size_t j = 0; j <= n_; ++j)
      if (nonbasic_[j] >= static_cast<long>(n_))
        out.dual[static_cast<std::size_t>(nonbasic_[j]) - n_] = d_[m_][j];
    return out;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    const Rational inv = 1 / d_[r][s];
    auto& pivot_row = d_[r];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || sgn(d_[i][s]) == 0) continue;
      auto& row = d_[i];
      const Rational factor = row[s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (sgn(pivot_row[j]) != 0) row[j] -= pivot_row[j] * factor;
      row[s] = pivot_row[s] * factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) pivot_row[j] *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i)
      if (i != r) d_[i][s] *= -inv;
    pivot_row[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // phase 2 optimizes the auxiliary row m+1, phase 1 the real objective.
  bool run(int phase) {
    const std::size_t x = m_ + static_cast<std::size_t>(phase) - 1;
    bool bland = false;
    std::size_t stalled = 0;
    Rational last = d_[x][n_ + 1];
    for (;;) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (sgn(d_[x][j]) >= 0) continue;
        if (s == n_ + 1) {
          s = j;
        } else if (bland ? nonbasic_[j] < nonbasic_[s]
                         : (d_[x][j] < d_[x][s] ||
                            (d_[x][j] == d_[x][s] && nonbasic_[j] < nonbasic_[s]))) {
          s = j;
        }
      }
      if (s == n_ + 1) return true;

      std::size_t r = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(d_[i][s]) <= 0) continue;
        Rational ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == m_ || ratio < best_ratio || (ratio == best_ratio && basic_[i] < basic_[r])) {
          r = i;
          best_ratio = std::move(ratio);
        }
      }
      if (r == m_) return false;
      pivot(r, s);

      if (d_[x][n_ + 1] == last) {
        if (++stalled > 50) bland = true;
      } else {
        stalled = 0;
        last = d_[x][n_ + 1];
      }
    }
  }

  std::size_t m_, n_;
  std::vector<long> basic_, nonbasic_;
  Matrix d_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution maximize(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  if (a.size() != b.size()) throw InputError("A and b disagree on the number of rows");
  return Dictionary(a, b, c).solve();
}

MatrixGameSolution solve_matrix_game(const Matrix& payoff) {
  if (payoff.empty() || payoff.front().empty()) throw InputError("matrix game needs rows and columns");
  const std::size_t rows = payoff.size(), cols = payoff.front().size();
  for (const auto& row : payoff) {
    if (row.size() != cols) throw InputError("ragged payoff matrix");
    for (const auto& v : row)
      if (sgn(v) < 0) throw InputError("payoff entries must be nonnegative");
  }

  MatrixGameSolution out;
  // A row of zeros pins the value at 0: the minimizer picks that row.
  for (std::size_t r = 0; r < rows; ++r) {
    if (std::all_of(payoff[r].begin(), payoff[r].end(), [](const Rational& v) { return sgn(v) == 0; })) {
      out.value = 0;
      out.row_mixture.assign(rows, Rational(0));
      out.row_mixture[r] = 1;
      out.column_mixture.assign(cols, Rational(0));
      out.column_mixture[0] = 1;
      return out;
    }
  }

  Matrix a(cols, std::vector<Rational>(rows));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[c][r] = payoff[r][c];
  const std::vector<Rational> b(cols, Rational(1));
  const std::vector<Rational> c(rows, Rational(1));
  auto lp = maximize(a, b, c);
  if (lp.status != LpStatus::kOptimal || sgn(lp.objective) <= 0)
    throw ValidationError("matrix game LP did not reach an optimum");

  out.pivots = lp.pivots;
  out.value = 1 / lp.objective;
  out.row_mixture.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) out.row_mixture[r] = lp.primal[r] * out.value;
  out.column_mixture.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) out.column_mixture[j] = lp.dual[j] * out.value;
  return out;
}

}  // namespace ptlab::lp
