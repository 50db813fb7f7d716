#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "ptlab/game.hpp"
#include "ptlab/quantum.hpp"

namespace ptlab {

/// Shared initial state plus, per player, an input-conditioned local program
/// and a classical post-processing of the raw measurement transcript.
class QuantumStrategy {
 public:
  using ProgramFactory = std::function<quantum::LocalProgram(std::size_t player, Symbol input)>;
  using Postprocess =
      std::function<Symbol(std::size_t player, Symbol input, const quantum::RawOutcome& raw)>;

  QuantumStrategy(quantum::RegisterLayout layout, quantum::StateDescriptor initial,
                  ProgramFactory programs, Postprocess postprocess, std::string description);

  const quantum::RegisterLayout& layout() const noexcept { return layout_; }
  const quantum::StateDescriptor& initial_descriptor() const noexcept { return initial_; }
  const quantum::PureState& initial_state() const noexcept { return *state_; }
  const std::string& description() const noexcept { return description_; }

  /// Program for one player's input; built once and cached (thread-safe).
  std::shared_ptr<const quantum::LocalProgram> program(std::size_t player, Symbol input) const;
  Symbol output(std::size_t player, Symbol input, const quantum::RawOutcome& raw) const {
    return postprocess_(player, input, raw);
  }

  /// Number of detectors player `player` reads on `input`: one per measured
  /// qudit for computational measurements, one per subspace measurement.
  int detectors(std::size_t player, Symbol input) const;

  std::map<quantum::JointOutcome, double> raw_distribution(std::span<const Symbol> question) const;
  std::map<Answer, double> answer_distribution(std::span<const Symbol> question) const;

  /// Per-player closure for live play: sees only its own input, its share of
  /// the state (through local operations) and its own randomness stream.
  Symbol play(std::size_t player, Symbol input, quantum::PureState& shared,
              quantum::Rng& own_rng) const;

 private:
  struct Cache;

  quantum::RegisterLayout layout_;
  quantum::StateDescriptor initial_;
  std::shared_ptr<const quantum::PureState> state_;
  ProgramFactory programs_;
  Postprocess postprocess_;
  std::string description_;
  std::shared_ptr<Cache> cache_;
};

/// Total probability that the strategy gives an inappropriate answer to the
/// legitimate question `q` (0 for a winning strategy).
double losing_probability(const Game& game, const QuantumStrategy& strategy,
                          std::span<const Symbol> q);

struct CertaintyReport {
  std::size_t questions = 0;
  double worst_losing_probability = 0.0;
  Question worst_question;
};

/// Exact check over every legitimate question.
CertaintyReport verify_certainty(const Game& game, const QuantumStrategy& strategy,
                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace ptlab
