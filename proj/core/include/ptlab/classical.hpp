#pragma once

// Classical bounds: the best success proportion over deterministic
// strategies (exhaustive enumeration) and the best worst-case success
// probability over shared-randomness mixtures (exact LP).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ptlab/game.hpp"
#include "ptlab/simplex.hpp"

namespace ptlab::classical {

/// All deterministic profiles of a game. A profile is indexed in mixed radix
/// with player 0 most significant; a player's table index lists its outputs
/// over inputs 0, 1, ... as base-|A| digits, input 0 most significant, so
/// index order is lexicographic order of the tables. When bottom is allowed
/// it is the largest digit.
class ProfileSpace {
 public:
  ProfileSpace(const Game& game, bool allow_bottom);

  bool allows_bottom() const noexcept { return allow_bottom_; }
  const mpz_class& size() const noexcept { return size_; }
  /// Exact decimal when short, otherwise a power-of-two approximation.
  std::string size_text() const;
  /// Throws CapacityError unless size() <= cap.
  void require_within(std::uint64_t cap) const;

  std::size_t players() const noexcept { return radix_.size(); }
  std::uint64_t tables(std::size_t player) const { return table_count_.at(player); }
  /// Requires require_within() to have passed.
  Symbol output(std::size_t player, std::uint64_t table, Symbol input) const;
  /// Outputs of one table, indexed by input. Requires require_within().
  const Symbol* table_outputs(std::size_t player, std::uint64_t table) const {
    return decoded_[player][table].data();
  }
  DeterministicStrategy strategy(std::uint64_t profile) const;

 private:
  void decode_tables() const;

  bool allow_bottom_;
  std::vector<std::size_t> radix_;   // outputs per input, incl. bottom
  std::vector<std::size_t> inputs_;  // input alphabet sizes
  std::vector<std::uint64_t> table_count_;
  mpz_class size_;
  mutable std::vector<std::vector<std::vector<Symbol>>> decoded_;  // [player][table][input]
};

/// Bitset over the legitimate questions (bit q set = question q won).
using WinMask = std::vector<std::uint64_t>;

struct MixedStrategy {
  std::vector<DeterministicStrategy> profiles;
  std::vector<Rational> weights;  ///< sums to 1
};

enum class Method { kEnumeration, kLinearProgram };
std::string_view to_string(Method method);

struct ClassicalBounds {
  std::string game;
  Game::Params params;
  std::size_t legitimate_questions = 0;
  Rational omega_tilde;
  /// Lexicographically first profile achieving omega_tilde.
  DeterministicStrategy best_strategy;
  std::optional<Rational> omega;
  std::optional<MixedStrategy> omega_strategy;
  /// Best worst-case value of a single deterministic profile.
  Rational best_single_worst_case;
  Method method = Method::kEnumeration;
  mpz_class strategy_space_size;
  std::string strategy_space_text;
  std::size_t distinct_columns = 0;
  std::size_t lp_columns = 0;
};

struct AnalysisOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
  bool solve_lp = true;
  /// Drop profiles whose win set is strictly contained in another's.
  bool prune_dominated = true;
};

/// omega_tilde by exhaustive enumeration (no LP).
ClassicalBounds optimal_success_proportion(const Game& game, std::uint64_t cap = kDefaultEnumerationCap,
                                           unsigned threads = 1);
/// omega_tilde and omega; omega solved exactly by the rational simplex over
/// the profile simplex, with the optimal mixture verified on every question.
ClassicalBounds optimal_success_probability(const Game& game, const AnalysisOptions& options = {});

/// Best worst-case win probability of a mixture of bottom-allowed profiles
/// that never lose on a legitimate question.
struct ErrorFreeBounds {
  Rational value;
  std::optional<MixedStrategy> strategy;
  mpz_class strategy_space_size;
  std::string strategy_space_text;
  std::size_t never_losing_profiles = 0;
  std::size_t lp_columns = 0;
};
ErrorFreeBounds optimal_errorfree_classical(const Game& game, const AnalysisOptions& options = {});

/// Exact uniform-question success of a mixed strategy.
Rational uniform_success(const Game& game, const MixedStrategy& strategy,
                         std::span<const Question> legitimate);
/// Exact worst-case (over legitimate questions) success of a mixed strategy.
Rational worst_case_success(const Game& game, const MixedStrategy& strategy,
                            std::span<const Question> legitimate);

struct TheoremReport {
  std::string game;
  std::size_t legitimate_questions = 0;
  Rational omega_tilde;
  Rational omega;
  bool omega_le_omega_tilde = false;
  bool gap_applies = false;  // omega_tilde < 1
  bool gap_holds = true;     // omega_tilde <= (#P - 1)/#P
  struct Sample {
    double empirical;
    double bound;  // omega_tilde + 4 sigma
    bool ok;
  };
  std::vector<Sample> mixed_samples;  // uniform-question Monte Carlo
  bool passed() const;
};

/// Checks the framework theorems on one game: omega <= omega_tilde; the
/// (#P-1)/#P gap when omega_tilde < 1; and that sampled mixed strategies
/// played on uniform legitimate questions never beat omega_tilde + 4 sigma.
TheoremReport check_framework_theorems(const Game& game, const AnalysisOptions& options = {},
                                       std::size_t mixed_samples = 8, std::size_t rounds = 4000,
                                       std::uint64_t seed = 1);

struct PValueBound {
  double value = 1.0;
  std::optional<Rational> exact;  ///< set when the tail sum was done in rationals
  std::string assumption;
};

/// P[Binomial(rounds, omega_tilde) >= wins]: an upper bound on the chance a
/// classical strategy wins that often, assuming rounds are independent with
/// questions uniform over the promise. Throws InputError if wins > rounds.
PValueBound classical_pvalue_bound(const Rational& omega_tilde, std::uint64_t wins,
                                   std::uint64_t rounds);

}  // namespace ptlab::classical
