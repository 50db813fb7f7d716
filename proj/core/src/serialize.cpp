#include "ptlab/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace ptlab::serialize {

namespace {

json params(const Game::Params& p) {
  json out = json::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json mixed(const Game& game, const classical::MixedStrategy& m) {
  json out = json::array();
  for (std::size_t j = 0; j < m.profiles.size(); ++j)
    out.push_back({{"weight", rational(m.weights[j])}, {"strategy", strategy(game, m.profiles[j])}});
  return out;
}

}  // namespace

json rational(const Rational& value) {
  return {{"num", value.get_num().get_str()}, {"den", value.get_den().get_str()}, {"value", value.get_d()}};
}

json strategy(const Game& game, const DeterministicStrategy& s) {
  json players = json::array();
  for (std::size_t i = 0; i < s.players(); ++i) {
    json table = json::object();
    const auto& in = game.input_alphabet(i);
    const auto& outa = game.output_alphabet(i);
    for (std::size_t x = 0; x < s.table(i).size(); ++x)
      table[in.label(static_cast<Symbol>(x))] = outa.label(s.table(i)[x]);
    players.push_back(std::move(table));
  }
  return players;
}

json bounds(const Game& game, const classical::ClassicalBounds& b) {
  json out = {{"game", b.game},
              {"params", params(b.params)},
              {"legitimate_questions", b.legitimate_questions},
              {"omega_tilde", rational(b.omega_tilde)},
              {"omega", b.omega ? rational(*b.omega) : json(nullptr)},
              {"method", std::string(classical::to_string(b.method))},
              {"witness", strategy(game, b.best_strategy)},
              {"strategy_space_size", b.strategy_space_text}};
  if (b.omega_strategy) {
    out["omega_certificate"] = mixed(game, *b.omega_strategy);
    out["lp_columns"] = b.lp_columns;
    out["distinct_columns"] = b.distinct_columns;
  }
  return out;
}

json errorfree(const classical::ErrorFreeBounds& b) {
  return {{"value", rational(b.value)},
          {"strategy_space_size", b.strategy_space_text},
          {"never_losing_profiles", b.never_losing_profiles},
          {"lp_columns", b.lp_columns}};
}

json threshold(const imperfection::ThresholdResult& t) {
  json out = {{"found", t.found},
              {"value", t.found ? json(t.value) : json(nullptr)},
              {"bracket", {t.bracket_lo, t.bracket_hi}},
              {"iterations", t.iterations},
              {"target", t.target},
              {"crossover_definition", t.crossover_definition}};
  if (!t.note.empty()) out["note"] = t.note;
  return out;
}

json theorems(const classical::TheoremReport& r) {
  json samples = json::array();
  for (const auto& s : r.mixed_samples)
    samples.push_back({{"empirical", s.empirical}, {"bound", s.bound}, {"ok", s.ok}});
  return {{"game", r.game},
          {"legitimate_questions", r.legitimate_questions},
          {"omega_tilde", rational(r.omega_tilde)},
          {"omega", rational(r.omega)},
          {"omega_le_omega_tilde", r.omega_le_omega_tilde},
          {"gap_applies", r.gap_applies},
          {"gap_holds", r.gap_holds},
          {"mixed_samples", samples},
          {"passed", r.passed()}};
}

json ks_verdict(const ks::KSSet& set, const ks::KSVerdict& v) {
  json out = {{"name", set.name()},
              {"dimension", set.dimension()},
              {"vectors", set.size()},
              {"ks_property", v.has_ks_property()},
              {"search_nodes", v.nodes}};
  out["colouring"] = v.colouring ? json(*v.colouring) : json(nullptr);
  return out;
}

json pvalue(const classical::PValueBound& p) {
  json out = {{"value", p.value}, {"assumption", p.assumption}};
  if (p.exact) out["exact"] = rational(*p.exact);
  return out;
}

json statistics(const Game& game, const referee::TrialStatistics& s) {
  json per = json::array();
  for (const auto& [q, t] : s.per_question)
    per.push_back({{"question", game.format_question(q)}, {"wins", t.wins}, {"draws", t.draws}, {"losses", t.losses}});
  json out = {{"game", s.game},
              {"executor", s.executor},
              {"mode", std::string(referee::to_string(s.mode))},
              {"seed", s.seed},
              {"rounds_total", s.rounds_total},
              {"rounds_legitimate", s.rounds_legitimate},
              {"wins", s.wins},
              {"draws", s.draws},
              {"losses", s.losses},
              {"discarded", s.discarded.size()},
              {"per_question", per}};
  out["pvalue_bound"] = s.pvalue_bound ? pvalue(*s.pvalue_bound) : json(nullptr);
  return out;
}

json summary(const referee::Summary& s) {
  json out = {{"win_rate", finite_or_null(s.win_rate)},
              {"draw_rate", finite_or_null(s.draw_rate)},
              {"loss_rate", finite_or_null(s.loss_rate)},
              {"omega_tilde", rational(s.omega_tilde)},
              {"pvalue_bound", pvalue(s.pvalue)},
              {"verdict", std::string(referee::to_string(s.verdict))},
              {"verdict_line", s.verdict_line}};
  if (!s.note.empty()) out["note"] = s.note;
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_transcript_csv(std::ostream& out, const Game& game, std::span<const referee::RoundRecord> rows) {
  out << "round,question,answer,outcome\n";
  for (const auto& r : rows)
    out << r.round << ',' << csv_escape(game.format_question(r.question)) << ','
        << csv_escape(game.format_answer(r.answer)) << ',' << to_string(r.outcome) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const imperfection::SweepRow> rows) {
  out << "game,param_name,param_value,quantum_win,quantum_draw,classical_bound\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%.12g,%.12g,", r.param_value, r.quantum_win, r.quantum_draw);
    out << csv_escape(r.game) << ',' << csv_escape(r.param_name) << ',' << buf;
    // Empty when no classical bound could be computed.
    if (std::isfinite(r.classical_bound)) {
      std::snprintf(buf, sizeof buf, "%.12g", r.classical_bound);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace ptlab::serialize
