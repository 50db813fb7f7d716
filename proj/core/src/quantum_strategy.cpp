#include <algorithm>
#include <mutex>

#include "ptlab/errors.hpp"
#include "ptlab/strategy.hpp"

namespace ptlab {

struct QuantumStrategy::Cache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, Symbol>, std::shared_ptr<const quantum::LocalProgram>> programs;
};

QuantumStrategy::QuantumStrategy(quantum::RegisterLayout layout, quantum::StateDescriptor initial,
                                 ProgramFactory programs, Postprocess postprocess,
                                 std::string description)
    : layout_(std::move(layout)),
      initial_(initial),
      state_(std::make_shared<const quantum::PureState>(quantum::make_state(layout_, initial_))),
      programs_(std::move(programs)),
      postprocess_(std::move(postprocess)),
      description_(std::move(description)),
      cache_(std::make_shared<Cache>()) {
  if (!programs_ || !postprocess_) throw InputError("strategy needs programs and post-processing");
}

std::shared_ptr<const quantum::LocalProgram> QuantumStrategy::program(std::size_t player,
                                                                      Symbol input) const {
  const auto key = std::make_pair(player, input);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->programs.find(key); it != cache_->programs.end()) return it->second;
  }
  auto built = std::make_shared<const quantum::LocalProgram>(programs_(player, input));
  std::lock_guard lock(cache_->mutex);
  return cache_->programs.emplace(key, std::move(built)).first->second;
}

int QuantumStrategy::detectors(std::size_t player, Symbol input) const {
  int count = 0;
  for (const auto& step : *program(player, input)) {
    if (std::holds_alternative<quantum::ComputationalMeasurement>(step))
      count += static_cast<int>(layout_.qudits(player).size());
    else if (std::holds_alternative<quantum::SubspaceMeasurement>(step))
      count += 1;
  }
  return count;
}

std::map<quantum::JointOutcome, double> QuantumStrategy::raw_distribution(
    std::span<const Symbol> question) const {
  if (question.size() != layout_.players())
    throw InputError("question arity differs from the strategy's player count");
  std::vector<quantum::LocalProgram> programs;
  for (std::size_t p = 0; p < question.size(); ++p) programs.push_back(*program(p, question[p]));
  return quantum::exact_outcome_distribution(*state_, programs);
}

std::map<Answer, double> QuantumStrategy::answer_distribution(
    std::span<const Symbol> question) const {
  std::map<Answer, double> out;
  for (const auto& [joint, prob] : raw_distribution(question)) {
    Answer a(question.size());
    for (std::size_t p = 0; p < a.size(); ++p) a[p] = output(p, question[p], joint[p]);
    out[a] += prob;
  }
  return out;
}

Symbol QuantumStrategy::play(std::size_t player, Symbol input, quantum::PureState& shared,
                             quantum::Rng& own_rng) const {
  const auto prog = program(player, input);
  const auto raw = quantum::run_program(shared, player, *prog, own_rng);
  return output(player, input, raw);
}

double losing_probability(const Game& game, const QuantumStrategy& strategy,
                          std::span<const Symbol> q) {
  double lose = 0.0;
  for (const auto& [a, prob] : strategy.answer_distribution(q))
    if (game.is_winning(q, a) == RoundOutcome::kLose) lose += prob;
  return lose;
}

CertaintyReport verify_certainty(const Game& game, const QuantumStrategy& strategy,
                                 std::uint64_t cap) {
  CertaintyReport report;
  for (const auto& q : legitimate_questions(game, cap)) {
    ++report.questions;
    const double lose = losing_probability(game, strategy, q);
    if (report.worst_question.empty() || lose > report.worst_losing_probability) {
      report.worst_losing_probability = lose;
      report.worst_question = q;
    }
  }
  return report;
}

}  // namespace ptlab
