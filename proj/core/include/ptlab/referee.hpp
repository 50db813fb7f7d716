#pragma once

// Referee harness: samples questions, collects answers from players that
// cannot communicate once questions are issued, post-selects legitimate
// rounds and tallies outcomes.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptlab/classical.hpp"
#include "ptlab/game.hpp"
#include "ptlab/imperfection.hpp"
#include "ptlab/strategy.hpp"

namespace ptlab::referee {

enum class QuestionMode { kUniformOverPromise, kIndependentProduct };
std::string_view to_string(QuestionMode mode);
QuestionMode parse_question_mode(std::string_view text);

/// Randomness streams derived from (seed, round, stream). Stream 0 is the
/// referee, stream 1 randomness shared before the round, stream 2+i player i.
quantum::Rng round_stream(std::uint64_t seed, std::uint64_t round, std::uint64_t stream);

class PlayerExecutor {
 public:
  static PlayerExecutor quantum(QuantumStrategy strategy);
  static PlayerExecutor classical(DeterministicStrategy strategy);
  static PlayerExecutor classical_mixed(classical::MixedStrategy strategy);
  static PlayerExecutor noisy_quantum(QuantumStrategy strategy, imperfection::NoiseParams noise,
                                      imperfection::EfficiencyParams efficiency);

  std::string_view kind() const noexcept;

  /// One round. Shared resources are fixed first; then each player's answer
  /// is computed from its own input, its share of the state and its own
  /// randomness stream only.
  Answer play_round(const Game& game, std::span<const Symbol> question, std::uint64_t seed,
                    std::uint64_t round) const;

 private:
  struct Noisy {
    QuantumStrategy strategy;
    imperfection::NoiseParams noise;
    imperfection::EfficiencyParams efficiency;
  };
  struct Mixed {
    classical::MixedStrategy mix;
    std::vector<double> weights;
  };
  using Kind = std::variant<QuantumStrategy, DeterministicStrategy, Mixed, Noisy>;
  explicit PlayerExecutor(Kind kind) : kind_(std::make_shared<const Kind>(std::move(kind))) {}
  std::shared_ptr<const Kind> kind_;
};

/// Strategy answering bottom to everything.
DeterministicStrategy all_bottom_strategy(const Game& game);

struct Tally {
  std::uint64_t wins = 0, draws = 0, losses = 0;
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct RoundRecord {
  std::uint64_t round = 0;
  Question question;
  Answer answer;
  RoundOutcome outcome = RoundOutcome::kWin;
  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct TrialStatistics {
  std::string game;
  std::string executor;
  QuestionMode mode = QuestionMode::kUniformOverPromise;
  std::uint64_t seed = 0;
  std::uint64_t rounds_total = 0;
  std::uint64_t rounds_legitimate = 0;
  std::uint64_t wins = 0, draws = 0, losses = 0;
  std::map<Question, Tally> per_question;
  /// Post-selected rounds, kept with their answers.
  std::vector<RoundRecord> discarded;
  /// Every round, when requested.
  std::vector<RoundRecord> transcript;
  std::optional<classical::PValueBound> pvalue_bound;
  friend bool operator==(const TrialStatistics& a, const TrialStatistics& b);
};

struct RunOptions {
  unsigned threads = 1;
  bool record_transcript = false;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Throws InputError when rounds == 0.
TrialStatistics run_rounds(const Game& game, const PlayerExecutor& executor, std::uint64_t rounds,
                           QuestionMode mode, std::uint64_t seed, const RunOptions& options = {});

/// #P / #(full question product).
Rational legitimate_density(const Game& game, std::uint64_t cap = kDefaultEnumerationCap);

enum class Verdict { kQuantumConsistent, kClassicalPossible, kInconclusive };
std::string_view to_string(Verdict verdict);

/// Significance level for calling a record quantum-consistent.
inline constexpr double kSignificance = 0.01;

struct Summary {
  double win_rate = 0.0, draw_rate = 0.0, loss_rate = 0.0;
  Rational omega_tilde;
  classical::PValueBound pvalue;
  Verdict verdict = Verdict::kInconclusive;
  std::string verdict_line;
  std::string note;
};

/// Attaches the classical p-value bound (also stored into stats) and a verdict.
Summary summarize(TrialStatistics& stats, const classical::ClassicalBounds& bounds);
Summary summarize(TrialStatistics& stats, const Rational& omega_tilde);

}  // namespace ptlab::referee
