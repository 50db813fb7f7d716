#pragma once

// Detector imperfections layered on a quantum strategy: noisy detectors flip
// each output bit with probability 1-p; inefficient detectors fail to fire
// with probability 1-eta, and a player with any silent detector answers
// bottom. Thresholds p* and eta* are found by bisection.

#include <cstdint>
#include <string>
#include <vector>

#include "ptlab/classical.hpp"
#include "ptlab/game.hpp"
#include "ptlab/strategy.hpp"

namespace ptlab::imperfection {

struct NoiseParams {
  double p = 1.0;  ///< probability each output bit is reported correctly
  explicit NoiseParams(double p_correct = 1.0);
};

struct EfficiencyParams {
  double eta = 1.0;  ///< per-detector firing probability
  explicit EfficiencyParams(double efficiency = 1.0);
};

struct OutcomeProbabilities {
  double win = 0.0;
  double draw = 0.0;
  double lose = 0.0;
};

/// Precomputes the ideal answer distribution of every legitimate question so
/// that many (p, eta) points can be evaluated cheaply.
class ImperfectQuantum {
 public:
  ImperfectQuantum(const Game& game, const QuantumStrategy& strategy,
                   std::uint64_t cap = kDefaultEnumerationCap);

  const Game& game() const noexcept { return *game_; }
  const std::vector<Question>& questions() const noexcept { return questions_; }
  /// Whether every output alphabet is a bit-string alphabet.
  bool supports_noise() const noexcept { return !bits_.empty(); }

  /// Exact outcome probabilities on one legitimate question under both
  /// imperfections. Throws UnsupportedModelError if p < 1 and the outputs are
  /// not bit strings.
  OutcomeProbabilities outcomes(std::size_t question, NoiseParams noise, EfficiencyParams efficiency) const;

  /// Minimum over legitimate questions of the win probability with noisy,
  /// fully efficient detectors.
  double noisy_success(double p) const;
  /// Outcome probabilities at the question with the smallest win probability
  /// for perfectly accurate but inefficient detectors.
  OutcomeProbabilities inefficient_outcomes(double eta) const;
  /// Average over legitimate questions (uniform-question setting).
  OutcomeProbabilities uniform_outcomes(NoiseParams noise, EfficiencyParams efficiency) const;

  /// Detectors each player reads on its input of legitimate question q.
  const std::vector<int>& detectors(std::size_t question) const { return detectors_.at(question); }

 private:
  const Game* game_;
  std::vector<Question> questions_;
  std::vector<std::vector<int>> detectors_;
  std::vector<double> ideal_win_;
  std::vector<double> mass_;
  // [question][w]: probability mass of answers that win after a flip pattern
  // of weight w, summed over all such patterns.
  std::vector<std::vector<double>> wins_by_flips_;
  std::vector<int> bits_;  // output bits per player; empty if not all bit strings
  int total_bits_ = 0;
};

double noisy_quantum_success(const Game& game, const QuantumStrategy& strategy, double p,
                             std::uint64_t cap = kDefaultEnumerationCap);
OutcomeProbabilities inefficient_quantum_outcomes(const Game& game, const QuantumStrategy& strategy,
                                                  double eta, std::uint64_t cap = kDefaultEnumerationCap);

struct ThresholdResult {
  bool found = false;
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double target = 0.0;  ///< classical value the quantum curve is matched to
  std::string crossover_definition;
  std::string note;  ///< why no crossover was found, when found is false
};

inline constexpr double kBisectionTolerance = 1e-9;
inline constexpr int kBisectionMaxIterations = 60;
inline constexpr int kMonotonicitySamples = 32;

/// p* in [1/2, 1]: noisy quantum success equals the classical value omega.
ThresholdResult noise_threshold(const ImperfectQuantum& model, double omega);
ThresholdResult noise_threshold(const Game& game, const QuantumStrategy& strategy,
                                const classical::ClassicalBounds& bounds,
                                std::uint64_t cap = kDefaultEnumerationCap);

/// eta* in [0, 1]: quantum win probability equals the best error-free
/// classical value.
ThresholdResult efficiency_threshold(const ImperfectQuantum& model, double errorfree_value);
ThresholdResult efficiency_threshold(const Game& game, const QuantumStrategy& strategy,
                                     const Rational& errorfree_value,
                                     std::uint64_t cap = kDefaultEnumerationCap);

using classical::optimal_errorfree_classical;

enum class SweepParameter { kNoise, kEfficiency };

struct SweepRow {
  std::string game;
  std::string param_name;
  double param_value = 0.0;
  double quantum_win = 0.0;
  double quantum_draw = 0.0;
  double classical_bound = 0.0;
};

/// Worst-case quantum win/draw along a parameter grid next to a fixed
/// classical bound.
std::vector<SweepRow> sweep(const ImperfectQuantum& model, SweepParameter parameter,
                            const std::vector<double>& values, double classical_bound);

}  // namespace ptlab::imperfection
