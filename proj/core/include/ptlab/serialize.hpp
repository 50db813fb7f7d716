#pragma once

// JSON and CSV renderings of analysis results.

#include <ostream>
#include <span>

#include <nlohmann/json.hpp>

#include "ptlab/classical.hpp"
#include "ptlab/imperfection.hpp"
#include "ptlab/ks_set.hpp"
#include "ptlab/referee.hpp"

namespace ptlab::serialize {

using nlohmann::json;

json rational(const Rational& value);  ///< {num, den, value}
json strategy(const Game& game, const DeterministicStrategy& s);

/// {game, params, omega_tilde, omega, method, witness, strategy_space_size, ...}
json bounds(const Game& game, const classical::ClassicalBounds& b);
json errorfree(const classical::ErrorFreeBounds& b);
json threshold(const imperfection::ThresholdResult& t);
json theorems(const classical::TheoremReport& r);
json ks_verdict(const ks::KSSet& set, const ks::KSVerdict& v);
json pvalue(const classical::PValueBound& p);
json statistics(const Game& game, const referee::TrialStatistics& s);
json summary(const referee::Summary& s);

std::string csv_escape(std::string_view field);
/// Columns: round, question, answer, outcome.
void write_transcript_csv(std::ostream& out, const Game& game, std::span<const referee::RoundRecord> rows);
/// Columns: game, param_name, param_value, quantum_win, quantum_draw, classical_bound.
void write_sweep_csv(std::ostream& out, std::span<const imperfection::SweepRow> rows);

}  // namespace ptlab::serialize
