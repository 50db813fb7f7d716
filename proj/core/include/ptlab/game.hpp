#pragma once

// Games between n cooperating players and a referee: alphabets, the promise
// (set of legitimate questions), the winning relation, and deterministic
// classical strategies.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ptlab {

using Rational = mpq_class;
using Symbol = int;

/// The "no detection / admit ignorance" output. Lives in every output
/// alphabet; any answer containing it is a draw.
inline constexpr Symbol kBottom = -1;

using Question = std::vector<Symbol>;
using Answer = std::vector<Symbol>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// A finite ordered alphabet {0, ..., size-1} with display labels.
class Alphabet {
 public:
  using Labeler = std::function<std::string(Symbol)>;

  explicit Alphabet(std::size_t size, Labeler labeler = {});

  /// Symbols rendered as their integer value.
  static Alphabet numeric(std::size_t size, Symbol display_offset = 0);
  /// Symbols are bit strings of `length`; bit j of the symbol is character j.
  static Alphabet bit_strings_lsb_first(int length);
  /// Symbols are bit strings of `length`; the most significant bit comes first.
  static Alphabet bit_strings_msb_first(int length);
  static Alphabet labelled(std::vector<std::string> labels);

  std::size_t size() const noexcept { return size_; }
  bool contains(Symbol s) const noexcept { return s >= 0 && static_cast<std::size_t>(s) < size_; }
  std::string label(Symbol s) const;
  /// Set for alphabets built as bit strings: the number of bits per symbol.
  std::optional<int> bit_length() const noexcept { return bits_; }

 private:
  std::size_t size_;
  Labeler labeler_;
  std::optional<int> bits_;
};

enum class RoundOutcome { kWin, kDraw, kLose, kNoPromise };

std::string_view to_string(RoundOutcome outcome);

/// How promise-violating rounds are scored. The game definition counts them
/// as wins; experiments post-select them away.
enum class ScoringConvention { kPostSelect, kPromiseViolationWins };

/// Whether `outcome` contributes a win under `convention`. Under kPostSelect
/// a no-promise round is neither a win nor a loss; callers drop it.
bool counts_as_win(RoundOutcome outcome, ScoringConvention convention);

class Game {
 public:
  using Promise = std::function<bool(std::span<const Symbol> question)>;
  using Winning =
      std::function<bool(std::span<const Symbol> question, std::span<const Symbol> answer)>;
  using Params = std::map<std::string, std::int64_t>;

  Game(std::string name, Params params, std::vector<Alphabet> inputs,
       std::vector<Alphabet> outputs, Promise promise, Winning winning);

  const std::string& name() const noexcept { return name_; }
  const Params& params() const noexcept { return params_; }
  std::size_t players() const noexcept { return inputs_.size(); }
  const Alphabet& input_alphabet(std::size_t player) const { return inputs_.at(player); }
  const Alphabet& output_alphabet(std::size_t player) const { return outputs_.at(player); }

  /// Throws InputError on wrong arity or out-of-alphabet entries.
  void validate_question(std::span<const Symbol> q) const;
  /// As validate_question; kBottom is accepted in any position.
  void validate_answer(std::span<const Symbol> a) const;

  bool is_legitimate(std::span<const Symbol> q) const;
  RoundOutcome is_winning(std::span<const Symbol> q, std::span<const Symbol> a) const;

  /// Unchecked fast paths for inner loops; arguments must already be valid.
  bool promise_holds(std::span<const Symbol> q) const { return promise_(q); }
  bool appropriate(std::span<const Symbol> q, std::span<const Symbol> a) const {
    return winning_(q, a);
  }

  /// Number of joint questions (product of input alphabet sizes), saturating
  /// at UINT64_MAX.
  std::uint64_t question_space_size() const noexcept;

  std::string format_question(std::span<const Symbol> q) const;
  std::string format_answer(std::span<const Symbol> a) const;

 private:
  std::string name_;
  Params params_;
  std::vector<Alphabet> inputs_;
  std::vector<Alphabet> outputs_;
  Promise promise_;
  Winning winning_;
};

/// All legitimate questions in lexicographic order (player 0 most
/// significant). Throws CapacityError when the full question product exceeds
/// `cap`, ValidationError when the promise admits no question.
std::vector<Question> legitimate_questions(const Game& game,
                                           std::uint64_t cap = kDefaultEnumerationCap);

/// One lookup table per player: input symbol -> output symbol.
class DeterministicStrategy {
 public:
  DeterministicStrategy() = default;
  explicit DeterministicStrategy(std::vector<std::vector<Symbol>> tables,
                                 bool allow_bottom = false);

  std::size_t players() const noexcept { return tables_.size(); }
  const std::vector<Symbol>& table(std::size_t player) const { return tables_.at(player); }
  bool allows_bottom() const noexcept { return allow_bottom_; }
  bool uses_bottom() const noexcept;

  Symbol respond(std::size_t player, Symbol input) const { return tables_[player][input]; }
  Answer answer(std::span<const Symbol> question) const;

  /// Tables must be total over the game's input alphabets and map into its
  /// output alphabets (plus kBottom when allowed).
  void validate_for(const Game& game) const;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;

 private:
  std::vector<std::vector<Symbol>> tables_;
  bool allow_bottom_ = false;
};

/// Fraction of legitimate questions answered appropriately by `strategy`.
/// The strategy must not emit kBottom.
Rational evaluate_deterministic(const Game& game, const DeterministicStrategy& strategy,
                                std::uint64_t cap = kDefaultEnumerationCap);

/// Same, over a precomputed list of legitimate questions.
Rational evaluate_deterministic(const Game& game, const DeterministicStrategy& strategy,
                                std::span<const Question> legitimate);

int hamming_weight(std::string_view bits);
int hamming_weight(std::uint64_t bits) noexcept;

}  // namespace ptlab
