#include "ptlab/game.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include "ptlab/errors.hpp"

namespace ptlab {

Alphabet::Alphabet(std::size_t size, Labeler labeler) : size_(size), labeler_(std::move(labeler)) {
  if (size_ == 0) throw InputError("alphabet must be nonempty");
}

Alphabet Alphabet::numeric(std::size_t size, Symbol display_offset) {
  return Alphabet(size, [display_offset](Symbol s) { return std::to_string(s + display_offset); });
}

Alphabet Alphabet::bit_strings_lsb_first(int length) {
  if (length < 1 || length > 30) throw InputError("bit-string length out of range");
  Alphabet out(std::size_t{1} << length, [length](Symbol s) {
    std::string out(static_cast<std::size_t>(length), '0');
    for (int j = 0; j < length; ++j)
      if ((s >> j) & 1) out[static_cast<std::size_t>(j)] = '1';
    return out;
  });
  out.bits_ = length;
  return out;
}

Alphabet Alphabet::bit_strings_msb_first(int length) {
  if (length < 1 || length > 30) throw InputError("bit-string length out of range");
  Alphabet out(std::size_t{1} << length, [length](Symbol s) {
    std::string out(static_cast<std::size_t>(length), '0');
    for (int j = 0; j < length; ++j)
      if ((s >> (length - 1 - j)) & 1) out[static_cast<std::size_t>(j)] = '1';
    return out;
  });
  out.bits_ = length;
  return out;
}

Alphabet Alphabet::labelled(std::vector<std::string> labels) {
  auto shared = std::make_shared<const std::vector<std::string>>(std::move(labels));
  const std::size_t n = shared->size();
  return Alphabet(n, [shared](Symbol s) { return (*shared)[static_cast<std::size_t>(s)]; });
}

std::string Alphabet::label(Symbol s) const {
  if (s == kBottom) return "_";
  if (!contains(s)) throw InputError("symbol " + std::to_string(s) + " outside alphabet");
  return labeler_ ? labeler_(s) : std::to_string(s);
}

std::string_view to_string(RoundOutcome outcome) {
  switch (outcome) {
    case RoundOutcome::kWin: return "win";
    case RoundOutcome::kDraw: return "draw";
    case RoundOutcome::kLose: return "lose";
    case RoundOutcome::kNoPromise: return "no-promise";
  }
  return "?";
}

bool counts_as_win(RoundOutcome outcome, ScoringConvention convention) {
  if (outcome == RoundOutcome::kWin) return true;
  return outcome == RoundOutcome::kNoPromise &&
         convention == ScoringConvention::kPromiseViolationWins;
}

Game::Game(std::string name, Params params, std::vector<Alphabet> inputs,
           std::vector<Alphabet> outputs, Promise promise, Winning winning)
    : name_(std::move(name)),
      params_(std::move(params)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      promise_(std::move(promise)),
      winning_(std::move(winning)) {
  if (inputs_.size() < 2) throw InputError("a game needs at least two players");
  if (inputs_.size() != outputs_.size())
    throw InputError("input and output alphabet counts differ");
  if (!promise_ || !winning_) throw InputError("promise and winning predicates are required");
}

void Game::validate_question(std::span<const Symbol> q) const {
  if (q.size() != players())
    throw InputError("question has " + std::to_string(q.size()) + " entries, expected " +
                     std::to_string(players()));
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!inputs_[i].contains(q[i]))
      throw InputError("question entry " + std::to_string(i) + " = " + std::to_string(q[i]) +
                       " is outside the input alphabet");
}

void Game::validate_answer(std::span<const Symbol> a) const {
  if (a.size() != players())
    throw InputError("answer has " + std::to_string(a.size()) + " entries, expected " +
                     std::to_string(players()));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != kBottom && !outputs_[i].contains(a[i]))
      throw InputError("answer entry " + std::to_string(i) + " = " + std::to_string(a[i]) +
                       " is outside the output alphabet");
}

bool Game::is_legitimate(std::span<const Symbol> q) const {
  validate_question(q);
  return promise_(q);
}

RoundOutcome Game::is_winning(std::span<const Symbol> q, std::span<const Symbol> a) const {
  validate_question(q);
  validate_answer(a);
  if (!promise_(q)) return RoundOutcome::kNoPromise;
  if (std::find(a.begin(), a.end(), kBottom) != a.end()) return RoundOutcome::kDraw;
  return winning_(q, a) ? RoundOutcome::kWin : RoundOutcome::kLose;
}

std::uint64_t Game::question_space_size() const noexcept {
  std::uint64_t total = 1;
  for (const auto& alphabet : inputs_) {
    const std::uint64_t n = alphabet.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / n)
      return std::numeric_limits<std::uint64_t>::max();
    total *= n;
  }
  return total;
}

std::string Game::format_question(std::span<const Symbol> q) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < q.size(); ++i) out << (i ? " " : "") << inputs_.at(i).label(q[i]);
  return out.str();
}

std::string Game::format_answer(std::span<const Symbol> a) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << outputs_.at(i).label(a[i]);
  return out.str();
}

std::vector<Question> legitimate_questions(const Game& game, std::uint64_t cap) {
  const std::uint64_t total = game.question_space_size();
  if (total > cap) {
    std::string size_text = total == std::numeric_limits<std::uint64_t>::max()
                                ? std::string(">= 2^64")
                                : std::to_string(total);
    throw CapacityError("question space of " + game.name(), size_text, cap);
  }

  const std::size_t n = game.players();
  std::vector<Question> out;
  Question q(n, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    if (game.promise_holds(q)) out.push_back(q);
    for (std::size_t i = n; i-- > 0;) {
      if (static_cast<std::size_t>(++q[i]) < game.input_alphabet(i).size()) break;
      q[i] = 0;
    }
  }
  if (out.empty()) throw ValidationError("game " + game.name() + " has an empty promise");
  return out;
}

DeterministicStrategy::DeterministicStrategy(std::vector<std::vector<Symbol>> tables,
                                             bool allow_bottom)
    : tables_(std::move(tables)), allow_bottom_(allow_bottom) {
  if (!allow_bottom_ && uses_bottom())
    throw InputError("plain deterministic strategies may not output the bottom symbol");
}

bool DeterministicStrategy::uses_bottom() const noexcept {
  return std::any_of(tables_.begin(), tables_.end(), [](const auto& t) {
    return std::find(t.begin(), t.end(), kBottom) != t.end();
  });
}

Answer DeterministicStrategy::answer(std::span<const Symbol> question) const {
  Answer a(question.size());
  for (std::size_t i = 0; i < question.size(); ++i)
    a[i] = tables_.at(i).at(static_cast<std::size_t>(question[i]));
  return a;
}

void DeterministicStrategy::validate_for(const Game& game) const {
  if (tables_.size() != game.players()) throw InputError("strategy arity differs from the game");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (tables_[i].size() != game.input_alphabet(i).size())
      throw InputError("table of player " + std::to_string(i) + " is not total");
    for (Symbol s : tables_[i]) {
      if (s == kBottom && allow_bottom_) continue;
      if (!game.output_alphabet(i).contains(s))
        throw InputError("table of player " + std::to_string(i) + " leaves the output alphabet");
    }
  }
}

Rational evaluate_deterministic(const Game& game, const DeterministicStrategy& strategy,
                                std::uint64_t cap) {
  const auto legit = legitimate_questions(game, cap);
  return evaluate_deterministic(game, strategy, legit);
}

Rational evaluate_deterministic(const Game& game, const DeterministicStrategy& strategy,
                                std::span<const Question> legitimate) {
  strategy.validate_for(game);
  if (strategy.uses_bottom())
    throw InputError("evaluate_deterministic takes plain strategies only");
  if (legitimate.empty()) throw ValidationError("empty promise");
  std::size_t good = 0;
  Answer a(game.players());
  for (const auto& q : legitimate) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = strategy.respond(i, q[i]);
    if (game.appropriate(q, a)) ++good;
  }
  Rational r(static_cast<unsigned long>(good), static_cast<unsigned long>(legitimate.size()));
  r.canonicalize();
  return r;
}

int hamming_weight(std::string_view bits) {
  return static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
}

int hamming_weight(std::uint64_t bits) noexcept { return std::popcount(bits); }

}  // namespace ptlab
