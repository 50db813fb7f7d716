#include "ptlab/imperfection.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "ptlab/errors.hpp"

namespace ptlab::imperfection {

namespace {

constexpr int kMaxNoisyBits = 20;

double checked_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InputError(std::string(what) + " must lie in [0, 1]");
  return v;
}

}  // namespace

NoiseParams::NoiseParams(double p_correct) : p(checked_probability(p_correct, "p")) {}
EfficiencyParams::EfficiencyParams(double efficiency) : eta(checked_probability(efficiency, "eta")) {}

ImperfectQuantum::ImperfectQuantum(const Game& game, const QuantumStrategy& strategy, std::uint64_t cap)
    : game_(&game), questions_(legitimate_questions(game, cap)) {
  if (strategy.layout().players() != game.players())
    throw InputError("strategy and game disagree on the number of players");

  int total_bits = 0;
  for (std::size_t p = 0; p < game.players(); ++p) {
    const auto bits = game.output_alphabet(p).bit_length();
    if (!bits) {
      bits_.clear();
      break;
    }
    bits_.push_back(*bits);
    total_bits += *bits;
  }
  if (total_bits > kMaxNoisyBits) bits_.clear();

  const std::size_t patterns = bits_.empty() ? 0 : std::size_t{1} << total_bits;
  ideal_win_.reserve(questions_.size());
  mass_.reserve(questions_.size());
  for (const auto& q : questions_) {
    std::vector<int> det(game.players());
    for (std::size_t p = 0; p < game.players(); ++p) det[p] = strategy.detectors(p, q[p]);
    detectors_.push_back(std::move(det));

    const auto dist = strategy.answer_distribution(q);
    double ideal = 0.0, mass = 0.0;
    std::vector<double> by_weight(bits_.empty() ? 0 : static_cast<std::size_t>(total_bits) + 1, 0.0);
    Answer flipped(game.players());
    for (const auto& [answer, prob] : dist) {
      mass += prob;
      if (game.appropriate(q, answer)) ideal += prob;
      for (std::size_t pattern = 0; pattern < patterns; ++pattern) {
        std::size_t rest = pattern;
        for (std::size_t p = 0; p < game.players(); ++p) {
          const auto k = static_cast<unsigned>(bits_[p]);
          flipped[p] = answer[p] ^ static_cast<Symbol>(rest & ((std::size_t{1} << k) - 1));
          rest >>= k;
        }
        if (game.appropriate(q, flipped))
          by_weight[static_cast<std::size_t>(std::popcount(pattern))] += prob;
      }
    }
    ideal_win_.push_back(ideal);
    mass_.push_back(mass);
    wins_by_flips_.push_back(std::move(by_weight));
  }
  total_bits_ = bits_.empty() ? 0 : total_bits;
}

OutcomeProbabilities ImperfectQuantum::outcomes(std::size_t question, NoiseParams noise,
                                                EfficiencyParams efficiency) const {
  const auto& det = detectors_.at(question);
  double all_fire = 1.0;
  for (int d : det) all_fire *= std::pow(efficiency.eta, d);

  double win_given_fire = ideal_win_[question];
  if (noise.p < 1.0) {
    if (!supports_noise())
      throw UnsupportedModelError("noisy detectors need bit-string outputs for every player");
    const auto& by_weight = wins_by_flips_[question];
    // by_weight[w] already sums over the patterns of weight w.
    win_given_fire = 0.0;
    for (std::size_t w = 0; w < by_weight.size(); ++w)
      win_given_fire += by_weight[w] * std::pow(1.0 - noise.p, static_cast<double>(w)) *
                        std::pow(noise.p, static_cast<double>(total_bits_) - static_cast<double>(w));
  }
  OutcomeProbabilities out;
  out.win = all_fire * win_given_fire;
  out.lose = all_fire * (mass_[question] - win_given_fire);
  out.draw = (1.0 - all_fire) * mass_[question];
  return out;
}

double ImperfectQuantum::noisy_success(double p) const {
  const NoiseParams noise(p);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < questions_.size(); ++q)
    worst = std::min(worst, outcomes(q, noise, EfficiencyParams(1.0)).win);
  return worst;
}

OutcomeProbabilities ImperfectQuantum::inefficient_outcomes(double eta) const {
  const EfficiencyParams efficiency(eta);
  OutcomeProbabilities worst;
  worst.win = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < questions_.size(); ++q) {
    const auto o = outcomes(q, NoiseParams(1.0), efficiency);
    if (o.win < worst.win) worst = o;
  }
  return worst;
}

OutcomeProbabilities ImperfectQuantum::uniform_outcomes(NoiseParams noise, EfficiencyParams efficiency) const {
  OutcomeProbabilities sum;
  for (std::size_t q = 0; q < questions_.size(); ++q) {
    const auto o = outcomes(q, noise, efficiency);
    sum.win += o.win;
    sum.draw += o.draw;
    sum.lose += o.lose;
  }
  const auto n = static_cast<double>(questions_.size());
  sum.win /= n;
  sum.draw /= n;
  sum.lose /= n;
  return sum;
}

double noisy_quantum_success(const Game& game, const QuantumStrategy& strategy, double p, std::uint64_t cap) {
  ImperfectQuantum model(game, strategy, cap);
  if (p < 1.0 && !model.supports_noise())
    throw UnsupportedModelError("noisy detectors need bit-string outputs for every player");
  return model.noisy_success(p);
}

OutcomeProbabilities inefficient_quantum_outcomes(const Game& game, const QuantumStrategy& strategy,
                                                  double eta, std::uint64_t cap) {
  return ImperfectQuantum(game, strategy, cap).inefficient_outcomes(eta);
}

namespace {

// Smallest x in [lo, hi] with curve(x) >= target, for a nondecreasing curve.
ThresholdResult bisect(const std::function<double(double)>& curve, double lo, double hi, double target,
                       std::string definition) {
  ThresholdResult out;
  out.target = target;
  out.crossover_definition = std::move(definition);
  double previous = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kMonotonicitySamples; ++k) {
    const double x = lo + (hi - lo) * k / (kMonotonicitySamples - 1);
    const double v = curve(x);
    if (v < previous - 1e-12)
      throw ValidationError("quantum curve is not monotone on the threshold interval");
    previous = v;
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  if (curve(lo) - target > 0) {
    out.note = "quantum curve is above the classical value on the whole interval";
    return out;
  }
  if (curve(hi) - target < 0) {
    out.note = "quantum curve never reaches the classical value on the interval";
    return out;
  }
  while (hi - lo > kBisectionTolerance && out.iterations < kBisectionMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    if (curve(mid) < target)
      lo = mid;
    else
      hi = mid;
    ++out.iterations;
  }
  out.found = true;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace

ThresholdResult noise_threshold(const ImperfectQuantum& model, double omega) {
  if (!model.supports_noise())
    throw UnsupportedModelError("noisy detectors need bit-string outputs for every player");
  return bisect([&](double p) { return model.noisy_success(p); }, 0.5, 1.0, omega,
                "p* = largest p in [1/2, 1] at which the worst-case success of the noisy quantum "
                "strategy does not exceed the classical value omega (classical detectors perfect)");
}

ThresholdResult noise_threshold(const Game& game, const QuantumStrategy& strategy,
                                const classical::ClassicalBounds& bounds, std::uint64_t cap) {
  if (!bounds.omega) throw InputError("classical bounds carry no omega; solve the LP first");
  return noise_threshold(ImperfectQuantum(game, strategy, cap), bounds.omega->get_d());
}

ThresholdResult efficiency_threshold(const ImperfectQuantum& model, double errorfree_value) {
  return bisect([&](double eta) { return model.inefficient_outcomes(eta).win; }, 0.0, 1.0, errorfree_value,
                "eta* = largest eta in [0, 1] at which the worst-case quantum win probability does "
                "not exceed that of the best error-free classical strategy");
}

ThresholdResult efficiency_threshold(const Game& game, const QuantumStrategy& strategy,
                                     const Rational& errorfree_value, std::uint64_t cap) {
  return efficiency_threshold(ImperfectQuantum(game, strategy, cap), errorfree_value.get_d());
}

std::vector<SweepRow> sweep(const ImperfectQuantum& model, SweepParameter parameter,
                            const std::vector<double>& values, double classical_bound) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    SweepRow row;
    row.game = model.game().name();
    row.param_value = v;
    row.classical_bound = classical_bound;
    if (parameter == SweepParameter::kNoise) {
      row.param_name = "p";
      row.quantum_win = model.noisy_success(v);
    } else {
      row.param_name = "eta";
      const auto o = model.inefficient_outcomes(v);
      row.quantum_win = o.win;
      row.quantum_draw = o.draw;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ptlab::imperfection
