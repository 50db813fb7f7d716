#include "ptlab/referee.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "ptlab/errors.hpp"

namespace ptlab::referee {

std::string_view to_string(QuestionMode mode) {
  return mode == QuestionMode::kUniformOverPromise ? "uniform" : "product";
}

QuestionMode parse_question_mode(std::string_view text) {
  if (text == "uniform") return QuestionMode::kUniformOverPromise;
  if (text == "product") return QuestionMode::kIndependentProduct;
  throw InputError("unknown question mode '" + std::string(text) + "' (uniform | product)");
}

quantum::Rng round_stream(std::uint64_t seed, std::uint64_t round, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32),
                    static_cast<std::uint32_t>(stream)};
  return quantum::Rng(seq);
}

PlayerExecutor PlayerExecutor::quantum(QuantumStrategy strategy) { return PlayerExecutor(Kind(std::move(strategy))); }

PlayerExecutor PlayerExecutor::classical(DeterministicStrategy strategy) {
  return PlayerExecutor(Kind(std::move(strategy)));
}

PlayerExecutor PlayerExecutor::classical_mixed(classical::MixedStrategy strategy) {
  if (strategy.profiles.empty() || strategy.profiles.size() != strategy.weights.size())
    throw InputError("mixed strategy needs one weight per profile");
  Mixed m;
  for (const auto& w : strategy.weights) {
    if (sgn(w) < 0) throw InputError("mixed strategy weights must be nonnegative");
    m.weights.push_back(w.get_d());
  }
  m.mix = std::move(strategy);
  return PlayerExecutor(Kind(std::move(m)));
}

PlayerExecutor PlayerExecutor::noisy_quantum(QuantumStrategy strategy, imperfection::NoiseParams noise,
                                             imperfection::EfficiencyParams efficiency) {
  return PlayerExecutor(Kind(Noisy{std::move(strategy), noise, efficiency}));
}

std::string_view PlayerExecutor::kind() const noexcept {
  switch (kind_->index()) {
    case 0: return "quantum";
    case 1: return "classical";
    case 2: return "classical-mixed";
    default: return "noisy-quantum";
  }
}

Answer PlayerExecutor::play_round(const Game& game, std::span<const Symbol> question, std::uint64_t seed,
                                  std::uint64_t round) const {
  const std::size_t n = game.players();
  Answer answer(n);
  if (const auto* qs = std::get_if<QuantumStrategy>(kind_.get())) {
    quantum::PureState shared = qs->initial_state();
    for (std::size_t i = 0; i < n; ++i) {
      auto own = round_stream(seed, round, 2 + i);
      answer[i] = qs->play(i, question[i], shared, own);
    }
  } else if (const auto* det = std::get_if<DeterministicStrategy>(kind_.get())) {
    for (std::size_t i = 0; i < n; ++i) answer[i] = det->respond(i, question[i]);
  } else if (const auto* mixed = std::get_if<Mixed>(kind_.get())) {
    auto shared = round_stream(seed, round, 1);
    std::discrete_distribution<std::size_t> pick(mixed->weights.begin(), mixed->weights.end());
    const auto& profile = mixed->mix.profiles[pick(shared)];
    for (std::size_t i = 0; i < n; ++i) answer[i] = profile.respond(i, question[i]);
  } else {
    const auto& noisy = std::get<Noisy>(*kind_);
    quantum::PureState shared = noisy.strategy.initial_state();
    std::bernoulli_distribution fires(noisy.efficiency.eta), correct(noisy.noise.p);
    for (std::size_t i = 0; i < n; ++i) {
      auto own = round_stream(seed, round, 2 + i);
      Symbol a = noisy.strategy.play(i, question[i], shared, own);
      const int detectors = noisy.strategy.detectors(i, question[i]);
      bool silent = false;
      for (int d = 0; d < detectors; ++d) silent = !fires(own) || silent;
      if (silent) {
        answer[i] = kBottom;
        continue;
      }
      if (noisy.noise.p < 1.0) {
        const auto bits = game.output_alphabet(i).bit_length();
        if (!bits) throw UnsupportedModelError("noisy detectors need bit-string outputs for every player");
        for (int b = 0; b < *bits; ++b)
          if (!correct(own)) a ^= Symbol{1} << b;
      }
      answer[i] = a;
    }
  }
  return answer;
}

DeterministicStrategy all_bottom_strategy(const Game& game) {
  std::vector<std::vector<Symbol>> tables;
  for (std::size_t i = 0; i < game.players(); ++i)
    tables.emplace_back(game.input_alphabet(i).size(), kBottom);
  return DeterministicStrategy(std::move(tables), true);
}

bool operator==(const TrialStatistics& a, const TrialStatistics& b) {
  return a.game == b.game && a.executor == b.executor && a.mode == b.mode && a.seed == b.seed &&
         a.rounds_total == b.rounds_total && a.rounds_legitimate == b.rounds_legitimate &&
         a.wins == b.wins && a.draws == b.draws && a.losses == b.losses &&
         a.per_question == b.per_question && a.discarded == b.discarded && a.transcript == b.transcript;
}

namespace {

struct Chunk {
  std::uint64_t legitimate = 0, wins = 0, draws = 0, losses = 0;
  std::map<Question, Tally> per_question;
  std::vector<RoundRecord> discarded, transcript;
};

void run_chunk(const Game& game, const PlayerExecutor& executor, const std::vector<Question>* legit,
               std::uint64_t seed, bool transcript, std::uint64_t lo, std::uint64_t hi, Chunk& out) {
  const std::size_t n = game.players();
  Question q(n);
  for (std::uint64_t round = lo; round < hi; ++round) {
    auto referee = round_stream(seed, round, 0);
    if (legit) {
      std::uniform_int_distribution<std::size_t> pick(0, legit->size() - 1);
      q = (*legit)[pick(referee)];
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<Symbol> pick(0, static_cast<Symbol>(game.input_alphabet(i).size()) - 1);
        q[i] = pick(referee);
      }
    }
    Answer a = executor.play_round(game, q, seed, round);
    const RoundOutcome outcome = game.is_winning(q, a);
    if (transcript) out.transcript.push_back({round, q, a, outcome});
    if (outcome == RoundOutcome::kNoPromise) {
      out.discarded.push_back({round, q, std::move(a), outcome});
      continue;
    }
    ++out.legitimate;
    Tally& t = out.per_question[q];
    switch (outcome) {
      case RoundOutcome::kWin: ++out.wins; ++t.wins; break;
      case RoundOutcome::kDraw: ++out.draws; ++t.draws; break;
      default: ++out.losses; ++t.losses; break;
    }
  }
}

}  // namespace

TrialStatistics run_rounds(const Game& game, const PlayerExecutor& executor, std::uint64_t rounds,
                           QuestionMode mode, std::uint64_t seed, const RunOptions& options) {
  if (rounds == 0) throw InputError("rounds must be at least 1");
  std::vector<Question> legit;
  if (mode == QuestionMode::kUniformOverPromise) legit = legitimate_questions(game, options.cap);

  const unsigned threads =
      static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.threads, rounds)));
  std::vector<Chunk> chunks(threads);
  const std::uint64_t size = (rounds + threads - 1) / threads;
  auto work = [&](unsigned t) {
    const std::uint64_t lo = std::min(rounds, size * t), hi = std::min(rounds, lo + size);
    run_chunk(game, executor, legit.empty() ? nullptr : &legit, seed, options.record_transcript, lo, hi,
              chunks[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  TrialStatistics stats;
  stats.game = game.name();
  stats.executor = std::string(executor.kind());
  stats.mode = mode;
  stats.seed = seed;
  stats.rounds_total = rounds;
  for (auto& c : chunks) {
    stats.rounds_legitimate += c.legitimate;
    stats.wins += c.wins;
    stats.draws += c.draws;
    stats.losses += c.losses;
    for (const auto& [q, t] : c.per_question) {
      Tally& dst = stats.per_question[q];
      dst.wins += t.wins;
      dst.draws += t.draws;
      dst.losses += t.losses;
    }
    stats.discarded.insert(stats.discarded.end(), std::make_move_iterator(c.discarded.begin()),
                           std::make_move_iterator(c.discarded.end()));
    stats.transcript.insert(stats.transcript.end(), std::make_move_iterator(c.transcript.begin()),
                            std::make_move_iterator(c.transcript.end()));
  }
  return stats;
}

Rational legitimate_density(const Game& game, std::uint64_t cap) {
  const auto legit = legitimate_questions(game, cap);
  Rational out(static_cast<unsigned long>(legit.size()), static_cast<unsigned long>(game.question_space_size()));
  out.canonicalize();
  return out;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kQuantumConsistent: return "quantum-consistent";
    case Verdict::kClassicalPossible: return "classical-possible";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

Summary summarize(TrialStatistics& stats, const classical::ClassicalBounds& bounds) {
  return summarize(stats, bounds.omega_tilde);
}

Summary summarize(TrialStatistics& stats, const Rational& omega_tilde) {
  Summary s;
  s.omega_tilde = omega_tilde;
  if (stats.rounds_legitimate > 0) {
    const auto n = static_cast<double>(stats.rounds_legitimate);
    s.win_rate = static_cast<double>(stats.wins) / n;
    s.draw_rate = static_cast<double>(stats.draws) / n;
    s.loss_rate = static_cast<double>(stats.losses) / n;
  }
  s.pvalue = classical::classical_pvalue_bound(omega_tilde, stats.wins, stats.rounds_legitimate);
  stats.pvalue_bound = s.pvalue;

  char buf[160];
  if (stats.rounds_legitimate == 0) {
    s.verdict = Verdict::kInconclusive;
    std::snprintf(buf, sizeof buf, "inconclusive: no legitimate rounds");
  } else if (s.pvalue.value <= kSignificance) {
    s.verdict = Verdict::kQuantumConsistent;
    std::snprintf(buf, sizeof buf, "quantum-consistent: %llu/%llu wins, classical p <= %.3g",
                  static_cast<unsigned long long>(stats.wins),
                  static_cast<unsigned long long>(stats.rounds_legitimate), s.pvalue.value);
  } else {
    s.verdict = Verdict::kClassicalPossible;
    std::snprintf(buf, sizeof buf, "classical-possible: %llu/%llu wins, classical p <= %.3g",
                  static_cast<unsigned long long>(stats.wins),
                  static_cast<unsigned long long>(stats.rounds_legitimate), s.pvalue.value);
  }
  s.verdict_line = buf;
  if (stats.mode == QuestionMode::kIndependentProduct)
    s.note =
        "questions were drawn independently per player and rounds outside the promise were "
        "discarded; the bound is applied to the kept rounds, which are uniform over the promise";
  return s;
}

}  // namespace ptlab::referee
