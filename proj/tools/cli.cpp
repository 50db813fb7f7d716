#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ptlab/catalog.hpp"
#include "ptlab/classical.hpp"
#include "ptlab/errors.hpp"
#include "ptlab/imperfection.hpp"
#include "ptlab/ks_set.hpp"
#include "ptlab/referee.hpp"
#include "ptlab/serialize.hpp"

namespace ptlab::cli {

namespace {

using nlohmann::json;

// Known constants per family, shown by `list`.
struct Family {
  const char* id;
  const char* params;
  const char* summary;
  const char* constants;
};

constexpr Family kFamilies[] = {
    {"ghz", "(n=3, l=1)", "three-player Mermin-GHZ game",
     "ω̃ = ω = 3/4; p* = 1/2 + 2^(-4/3) ≈ 0.8968; η* = ½·4^(1/3) ≈ 0.7937"},
    {"parity", "n l  (n >= 3, l >= 1)", "sum of l-bit inputs divisible by 2^l; output parity",
     "l=1: ω̃ = ω = 1/2 + 2^(-ceil(n/2)); p* = 1/2 + 2^((1-3n)/(2n)) (odd n), "
     "1/2 + 2^((2-3n)/(2n)) (even n); η* = ½·4^(1/n)"},
    {"extended-parity", "n  (l = ceil(lg n) - 1)", "parity game with wider inputs", "η* <= 8/n; p* unknown"},
    {"dj", "m  (1..4)", "two players, 2^m-bit inputs equal or at distance 2^(m-1)",
     "quantum wins with m-bit outputs; ω̃ enumerable for m = 1 only"},
    {"magic-square", "", "3x3 parity square, rows even, columns odd", "ω̃ = ω = 8/9; no promise"},
    {"matching", "m  (even, >= 2)", "Alice holds an m-bit string, Bob a perfect matching",
     "no promise; ω̃ enumerable for m = 2 only"},
    {"colouring", "[--ks file]", "colouring d=4 (18-vector KS set) by default",
     "quantum wins whenever the set has the Kochen-Specker property; ω̃ out of cap"},
    {"boyer", "n M  (3 <= n <= 8, M even, 2..64)", "inputs mod 2M with even sum; outputs sum to half of it mod M",
     "quantum wins for every n, M"},
};

struct GameArgs {
  std::string id;
  int n = 0, l = 0, m = 0, modulus = 0;
  std::string ks_path;
};

std::string describe_params(const Game& game) {
  std::string out;
  for (const auto& [k, v] : game.params()) out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return out.empty() ? game.name() : game.name() + " (" + out + ")";
}

catalog::GameBundle resolve(const GameArgs& g) {
  auto or_default = [](int v, int d) { return v != 0 ? v : d; };
  if (g.id == "ghz") return catalog::build_mermin_ghz();
  if (g.id == "parity") return catalog::build_parity_game(or_default(g.n, 3), or_default(g.l, 1));
  if (g.id == "extended-parity") return catalog::build_extended_parity(or_default(g.n, 4));
  if (g.id == "dj") return catalog::build_dj_game(or_default(g.m, 1));
  if (g.id == "magic-square") return catalog::build_magic_square_game();
  if (g.id == "matching") return catalog::build_matching_game(or_default(g.m, 2));
  if (g.id == "colouring") {
    if (g.ks_path.empty()) return catalog::build_colouring_game(ks::shipped_cabello18(), false);
    return catalog::build_colouring_game(ks::KSSet::load_file(g.ks_path), true);
  }
  if (g.id == "boyer") return catalog::build_boyer_game(or_default(g.n, 3), or_default(g.modulus, 2));
  throw InputError("unknown game '" + g.id + "'; run `ptlab list`");
}

bool is_parity_family(const Game& game) { return game.name() == "ghz" || game.name() == "parity"; }

unsigned default_threads() {
  if (const char* env = std::getenv("PTLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::string frac(const Rational& r) { return r.get_str(); }

std::string fixed(double v, int digits = 6) {
  if (!std::isfinite(v)) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

void row(std::ostream& out, std::string_view key, const std::string& value) {
  out << std::left << std::setw(22) << key << value << '\n';
}

std::string witness_text(const Game& game, const DeterministicStrategy& s) {
  std::string out;
  for (std::size_t i = 0; i < s.players(); ++i) {
    if (i) out += " | ";
    out += "p" + std::to_string(i) + ":";
    for (std::size_t x = 0; x < s.table(i).size(); ++x)
      out += " " + game.input_alphabet(i).label(static_cast<Symbol>(x)) + "->" +
             game.output_alphabet(i).label(s.table(i)[x]);
  }
  return out;
}

// Output sink honouring --out.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct Common {
  GameArgs game;
  std::string format = "table";
  std::string out_path;
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = default_threads();
};

void add_game_options(CLI::App* cmd, Common& c, bool positional = true) {
  if (positional) cmd->add_option("game", c.game.id, "game id (see `list`)")->required();
  cmd->add_option("--n", c.game.n, "number of players");
  cmd->add_option("--l", c.game.l, "input bits (parity)");
  cmd->add_option("--m", c.game.m, "size parameter (dj, matching)");
  cmd->add_option("--M", c.game.modulus, "modulus (boyer)");
  cmd->add_option("--ks", c.game.ks_path, "Kochen-Specker set file (colouring)");
}

void add_output_options(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(std::move(formats)));
  cmd->add_option("--out", c.out_path, "write output to this file");
  cmd->add_option("--cap", c.cap, "enumeration budget")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads (default $PTLAB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

int cmd_list(std::ostream& out, const std::string& format) {
  if (format == "json") {
    json j = json::array();
    for (const auto& f : kFamilies)
      j.push_back({{"id", f.id}, {"params", f.params}, {"summary", f.summary}, {"constants", f.constants}});
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& f : kFamilies)
    out << std::left << std::setw(16) << f.id << ' ' << f.params << "\n    " << f.summary << "\n    " << f.constants
        << '\n';
  return kExitOk;
}

int cmd_describe(const Common& c, std::ostream& stdout_stream) {
  const auto bundle = resolve(c.game);
  const Game& game = bundle.game;
  const auto legit = legitimate_questions(game, c.cap);
  const auto certainty = verify_certainty(game, bundle.strategy, c.cap);
  const auto density = Rational(static_cast<unsigned long>(legit.size()),
                                static_cast<unsigned long>(game.question_space_size()));
  const classical::ProfileSpace space(game, false);
  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    json players = json::array();
    for (std::size_t i = 0; i < game.players(); ++i)
      players.push_back({{"inputs", game.input_alphabet(i).size()}, {"outputs", game.output_alphabet(i).size()}});
    Rational d = density;
    d.canonicalize();
    out << json{{"game", game.name()},
                {"label", describe_params(game)},
                {"players", players},
                {"question_space", game.question_space_size()},
                {"legitimate_questions", legit.size()},
                {"legitimate_density", serialize::rational(d)},
                {"strategy_space_size", space.size_text()},
                {"quantum_strategy", bundle.strategy.description()},
                {"worst_losing_probability", certainty.worst_losing_probability}}
               .dump(2)
        << '\n';
  } else {
    Rational d = density;
    d.canonicalize();
    row(out, "game", describe_params(game));
    row(out, "players", std::to_string(game.players()));
    for (std::size_t i = 0; i < game.players(); ++i)
      row(out, "  player " + std::to_string(i),
          "|X| = " + std::to_string(game.input_alphabet(i).size()) +
              ", |A| = " + std::to_string(game.output_alphabet(i).size()));
    row(out, "questions", std::to_string(game.question_space_size()));
    row(out, "legitimate", std::to_string(legit.size()) + " (density " + frac(d) + ")");
    row(out, "strategy space", space.size_text());
    row(out, "quantum strategy", bundle.strategy.description());
    row(out, "worst losing prob", fixed(certainty.worst_losing_probability, 12));
  }
  return certainty.worst_losing_probability <= 1e-9 ? kExitOk : kExitViolation;
}

int cmd_analyze(const Common& c, bool no_lp, bool errorfree, std::ostream& stdout_stream) {
  const auto bundle = resolve(c.game);
  const Game& game = bundle.game;
  classical::AnalysisOptions options;
  options.cap = c.cap;
  options.threads = c.threads;
  options.solve_lp = !no_lp;
  const auto bounds = classical::optimal_success_probability(game, options);
  std::optional<classical::ErrorFreeBounds> ef;
  if (errorfree) ef = classical::optimal_errorfree_classical(game, options);

  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    json j = serialize::bounds(game, bounds);
    if (ef) j["errorfree"] = serialize::errorfree(*ef);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  row(out, "game", describe_params(game));
  row(out, "legitimate questions", std::to_string(bounds.legitimate_questions));
  row(out, "strategy space", bounds.strategy_space_text);
  row(out, "omega_tilde", frac(bounds.omega_tilde));
  if (bounds.omega)
    row(out, "omega", frac(*bounds.omega) + "  (" + std::string(classical::to_string(bounds.method)) + ", " +
                          std::to_string(bounds.lp_columns) + " columns)");
  row(out, "witness", witness_text(game, bounds.best_strategy));
  if (ef) row(out, "error-free value", frac(ef->value));
  return kExitOk;
}

struct ThresholdReport {
  json j;
  bool capacity_hit = false;
};

ThresholdReport thresholds(const catalog::GameBundle& bundle, const Common& c) {
  const Game& game = bundle.game;
  ThresholdReport r;
  r.j = {{"game", game.name()}, {"label", describe_params(game)}};
  if (!is_parity_family(game)) r.j["note"] = "no closed-form target for this game";
  const imperfection::ImperfectQuantum model(game, bundle.strategy, c.cap);
  classical::AnalysisOptions options;
  options.cap = c.cap;
  options.threads = c.threads;

  try {
    const auto bounds = classical::optimal_success_probability(game, options);
    r.j["omega"] = serialize::rational(*bounds.omega);
    if (model.supports_noise())
      r.j["noise_threshold"] = serialize::threshold(imperfection::noise_threshold(model, bounds.omega->get_d()));
    else
      r.j["noise_threshold"] = {{"status", "unsupported: outputs are not bit strings"}};
  } catch (const CapacityError& e) {
    r.capacity_hit = true;
    r.j["omega"] = nullptr;
    r.j["noise_threshold"] = {{"status", "out of cap"}, {"strategy_space_size", e.size_text()}};
  }
  try {
    const auto ef = classical::optimal_errorfree_classical(game, options);
    r.j["errorfree"] = serialize::errorfree(ef);
    r.j["efficiency_threshold"] = serialize::threshold(imperfection::efficiency_threshold(model, ef.value.get_d()));
  } catch (const CapacityError& e) {
    r.capacity_hit = true;
    r.j["errorfree"] = nullptr;
    r.j["efficiency_threshold"] = {{"status", "out of cap"}, {"strategy_space_size", e.size_text()}};
  }
  return r;
}

int cmd_thresholds(const Common& c, std::ostream& stdout_stream) {
  const auto bundle = resolve(c.game);
  const auto report = thresholds(bundle, c);
  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    out << report.j.dump(2) << '\n';
  } else {
    auto value_of = [](const json& t) -> std::string {
      if (t.contains("value") && t["value"].is_number()) return fixed(t["value"].get<double>(), 9);
      if (t.contains("status")) return t["status"].get<std::string>();
      return t.value("note", std::string("no crossover"));
    };
    row(out, "game", report.j["label"].get<std::string>());
    row(out, "omega", report.j["omega"].is_null() ? "out of cap" : report.j["omega"]["num"].get<std::string>() + "/" +
                                                                         report.j["omega"]["den"].get<std::string>());
    row(out, "p*", value_of(report.j["noise_threshold"]));
    row(out, "error-free value",
        report.j["errorfree"].is_null() ? "out of cap"
                                        : report.j["errorfree"]["value"]["num"].get<std::string>() + "/" +
                                              report.j["errorfree"]["value"]["den"].get<std::string>());
    row(out, "eta*", value_of(report.j["efficiency_threshold"]));
    if (report.j.contains("note")) row(out, "note", report.j["note"].get<std::string>());
  }
  return report.capacity_hit ? kExitCapacity : kExitOk;
}

int cmd_sweep(const Common& c, const std::string& param, std::optional<double> from, std::optional<double> to,
              double step, std::ostream& stdout_stream, std::ostream& err) {
  if (param != "p" && param != "eta") throw InputError("--param must be p or eta");
  const double lo = from.value_or(param == "p" ? 0.5 : 0.0);
  const double hi = to.value_or(1.0);
  if (!(step > 0) || hi < lo) throw InputError("sweep needs --step > 0 and --from <= --to");
  const auto bundle = resolve(c.game);
  const imperfection::ImperfectQuantum model(bundle.game, bundle.strategy, c.cap);

  classical::AnalysisOptions options;
  options.cap = c.cap;
  options.threads = c.threads;
  double classical_bound = std::nan("");
  try {
    classical_bound = param == "p" ? classical::optimal_success_probability(bundle.game, options).omega->get_d()
                                   : classical::optimal_errorfree_classical(bundle.game, options).value.get_d();
  } catch (const CapacityError& e) {
    err << "note: classical bound out of cap (" << e.what() << "); column left empty\n";
  }
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) values.push_back(lo + step * static_cast<double>(k));
  const auto rows = imperfection::sweep(
      model, param == "p" ? imperfection::SweepParameter::kNoise : imperfection::SweepParameter::kEfficiency,
      values, classical_bound);

  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"game", r.game},
                   {"param_name", r.param_name},
                   {"param_value", r.param_value},
                   {"quantum_win", r.quantum_win},
                   {"quantum_draw", r.quantum_draw},
                   {"classical_bound", std::isfinite(r.classical_bound) ? json(r.classical_bound) : json(nullptr)}});
    out << j.dump(2) << '\n';
  } else {
    serialize::write_sweep_csv(out, rows);
  }
  return kExitOk;
}

int cmd_play(const Common& c, const std::string& strategy, std::uint64_t rounds, std::uint64_t seed,
             const std::string& mode_text, double p, double eta, const std::string& transcript_path,
             std::ostream& stdout_stream, std::ostream& err) {
  if (rounds == 0) throw InputError("--rounds must be at least 1");
  const auto mode = referee::parse_question_mode(mode_text);
  const auto bundle = resolve(c.game);
  const Game& game = bundle.game;

  classical::AnalysisOptions options;
  options.cap = c.cap;
  options.threads = c.threads;
  std::optional<classical::ClassicalBounds> bounds;
  auto need_bounds = [&](bool lp) -> const classical::ClassicalBounds& {
    if (!bounds || (lp && !bounds->omega)) {
      auto o = options;
      o.solve_lp = lp;
      bounds = classical::optimal_success_probability(game, o);
    }
    return *bounds;
  };

  std::optional<referee::PlayerExecutor> executor;
  if (strategy == "quantum") {
    executor = referee::PlayerExecutor::quantum(bundle.strategy);
  } else if (strategy == "classical-best") {
    executor = referee::PlayerExecutor::classical(need_bounds(false).best_strategy);
  } else if (strategy == "classical-mixed") {
    executor = referee::PlayerExecutor::classical_mixed(*need_bounds(true).omega_strategy);
  } else if (strategy == "noisy-quantum") {
    executor = referee::PlayerExecutor::noisy_quantum(bundle.strategy, imperfection::NoiseParams(p),
                                                      imperfection::EfficiencyParams(eta));
  } else if (strategy == "all-bottom") {
    executor = referee::PlayerExecutor::classical(referee::all_bottom_strategy(game));
  } else {
    throw InputError("unknown strategy '" + strategy + "'");
  }

  referee::RunOptions run;
  run.threads = c.threads;
  run.cap = c.cap;
  run.record_transcript = !transcript_path.empty();
  auto stats = referee::run_rounds(game, *executor, rounds, mode, seed, run);

  std::optional<referee::Summary> summary;
  try {
    summary = referee::summarize(stats, need_bounds(false));
  } catch (const CapacityError& e) {
    err << "note: no classical bound (" << e.what() << ")\n";
  }

  if (!transcript_path.empty()) {
    std::ofstream t(transcript_path);
    if (!t) throw InputError("cannot open '" + transcript_path + "' for writing");
    serialize::write_transcript_csv(t, game, stats.transcript);
  }

  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    json j = {{"statistics", serialize::statistics(game, stats)}};
    j["summary"] = summary ? serialize::summary(*summary) : json(nullptr);
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "question,wins,draws,losses\n";
    for (const auto& [q, t] : stats.per_question)
      out << serialize::csv_escape(game.format_question(q)) << ',' << t.wins << ',' << t.draws << ',' << t.losses
          << '\n';
  } else {
    row(out, "game", describe_params(game));
    row(out, "executor", stats.executor);
    row(out, "mode", std::string(referee::to_string(stats.mode)));
    row(out, "seed", std::to_string(stats.seed));
    row(out, "rounds", std::to_string(stats.rounds_total));
    row(out, "legitimate", std::to_string(stats.rounds_legitimate));
    row(out, "wins", std::to_string(stats.wins));
    row(out, "draws", std::to_string(stats.draws));
    row(out, "losses", std::to_string(stats.losses));
    if (summary) {
      row(out, "win rate", fixed(summary->win_rate));
      row(out, "omega_tilde", frac(summary->omega_tilde));
      std::ostringstream pv;
      pv << std::setprecision(4) << summary->pvalue.value;
      row(out, "p-value bound", pv.str());
      row(out, "verdict", summary->verdict_line);
      row(out, "assumption", summary->pvalue.assumption);
      if (!summary->note.empty()) row(out, "note", summary->note);
    }
  }
  const bool quantum = strategy == "quantum";
  return quantum && stats.losses > 0 ? kExitViolation : kExitOk;
}

int cmd_verify_ks(const Common& c, std::ostream& stdout_stream) {
  const ks::KSSet set = c.game.ks_path.empty() ? ks::shipped_cabello18() : ks::KSSet::load_file(c.game.ks_path);
  const auto start = std::chrono::steady_clock::now();
  const auto verdict = ks::verify_ks_property(set);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    json j = serialize::ks_verdict(set, verdict);
    j["seconds"] = seconds;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  row(out, "set", set.name());
  row(out, "dimension", std::to_string(set.dimension()));
  row(out, "vectors", std::to_string(set.size()));
  row(out, "contexts", std::to_string(set.contexts().size()));
  row(out, "search nodes", std::to_string(verdict.nodes));
  row(out, "seconds", fixed(seconds, 3));
  if (verdict.has_ks_property()) {
    row(out, "verdict", "non-colourable (Kochen-Specker property holds)");
  } else {
    std::string colouring;
    for (int v : *verdict.colouring) colouring += std::to_string(v);
    row(out, "verdict", "colourable");
    row(out, "witness", colouring);
  }
  return kExitOk;
}

int cmd_check_theorems(const Common& c, const std::vector<std::string>& games, std::size_t random_games,
                       std::uint64_t seed, std::ostream& stdout_stream) {
  std::vector<GameArgs> targets;
  for (const auto& id : games) {
    GameArgs g = c.game;
    g.id = id;
    targets.push_back(g);
  }
  classical::AnalysisOptions options;
  options.cap = c.cap;
  options.threads = c.threads;

  json results = json::array();
  bool all_passed = true;
  auto record = [&](const Game& game) {
    try {
      auto report = classical::check_framework_theorems(game, options, 8, 4000, seed);
      all_passed = all_passed && report.passed();
      json j = serialize::theorems(report);
      j["label"] = describe_params(game);
      results.push_back(std::move(j));
    } catch (const CapacityError& e) {
      results.push_back({{"label", describe_params(game)}, {"status", "out of cap"}, {"detail", e.what()}});
    }
  };
  for (const auto& g : targets) record(resolve(g).game);
  for (std::size_t k = 0; k < random_games; ++k) record(catalog::build_random_game(seed * 1000003 + k));

  Sink sink(stdout_stream, c.out_path);
  auto& out = *sink;
  if (c.format == "json") {
    out << json{{"results", results}, {"passed", all_passed}}.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      if (r.contains("status")) {
        row(out, r["label"].get<std::string>(), "out of cap");
        continue;
      }
      const std::string text = std::string(r["passed"].get<bool>() ? "ok" : "VIOLATION") +
                               "  omega=" + r["omega"]["num"].get<std::string>() + "/" +
                               r["omega"]["den"].get<std::string>() + " omega_tilde=" +
                               r["omega_tilde"]["num"].get<std::string>() + "/" +
                               r["omega_tilde"]["den"].get<std::string>();
      row(out, r["label"].get<std::string>(), text);
    }
    row(out, "overall", all_passed ? "all checks passed" : "violations found");
  }
  return all_passed ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ptlab: pseudo-telepathy game laboratory"};
  app.require_subcommand(1);

  std::string list_format = "table";
  auto* list = app.add_subcommand("list", "list game families and known constants");
  list->add_option("--format", list_format)->check(CLI::IsMember({"table", "json"}));

  Common describe_c, analyze_c, thresholds_c, sweep_c, play_c, ks_c, theorem_c;

  auto* describe = app.add_subcommand("describe", "show a game's structure and check its quantum strategy");
  add_game_options(describe, describe_c);
  add_output_options(describe, describe_c, {"table", "json"});

  bool no_lp = false, errorfree = false;
  auto* analyze = app.add_subcommand("analyze", "classical bounds by enumeration and exact LP");
  add_game_options(analyze, analyze_c);
  add_output_options(analyze, analyze_c, {"table", "json"});
  analyze->add_flag("--no-lp", no_lp, "skip the LP (omega_tilde only)");
  analyze->add_flag("--errorfree", errorfree, "also solve the error-free (bottom-allowed) LP");

  auto* thresholds = app.add_subcommand("thresholds", "noise and efficiency thresholds p* and eta*");
  add_game_options(thresholds, thresholds_c);
  add_output_options(thresholds, thresholds_c, {"table", "json"});

  std::string sweep_param = "p";
  std::optional<double> sweep_from, sweep_to;
  double sweep_step = 0.05;
  sweep_c.format = "csv";
  auto* sweep = app.add_subcommand("sweep", "quantum win/draw along p or eta");
  add_game_options(sweep, sweep_c);
  add_output_options(sweep, sweep_c, {"csv", "json"});
  sweep->add_option("--param", sweep_param, "p or eta")->check(CLI::IsMember({"p", "eta"}));
  sweep->add_option("--from", sweep_from, "first value (default 0.5 for p, 0 for eta)");
  sweep->add_option("--to", sweep_to, "last value (default 1)");
  sweep->add_option("--step", sweep_step, "grid step");

  std::string strategy = "quantum", mode = "uniform", transcript;
  std::uint64_t rounds = 1000, seed = 1;
  double p = 1.0, eta = 1.0;
  auto* play = app.add_subcommand("play", "run rounds against the referee");
  add_game_options(play, play_c);
  add_output_options(play, play_c, {"table", "json", "csv"});
  play->add_option("--strategy", strategy, "quantum | classical-best | classical-mixed | noisy-quantum | all-bottom")
      ->check(CLI::IsMember({"quantum", "classical-best", "classical-mixed", "noisy-quantum", "all-bottom"}));
  play->add_option("--rounds", rounds, "number of rounds");
  play->add_option("--seed", seed, "random seed");
  play->add_option("--mode", mode, "uniform | product")->check(CLI::IsMember({"uniform", "product"}));
  play->add_option("--p", p, "detector correctness (noisy-quantum)")->check(CLI::Range(0.0, 1.0));
  play->add_option("--eta", eta, "detector efficiency (noisy-quantum)")->check(CLI::Range(0.0, 1.0));
  play->add_option("--transcript", transcript, "write per-round CSV here");

  auto* verify_ks = app.add_subcommand("verify-ks", "prove a vector set has the Kochen-Specker property");
  verify_ks->add_option("--ks", ks_c.game.ks_path, "set file (default: shipped 18-vector set)");
  add_output_options(verify_ks, ks_c, {"table", "json"});

  std::vector<std::string> theorem_games;
  std::size_t random_games = 0;
  std::uint64_t theorem_seed = 1;
  auto* check = app.add_subcommand("check-theorems", "check the classical framework theorems on games");
  check->add_option("games", theorem_games, "game ids (default: ghz magic-square)");
  add_game_options(check, theorem_c, false);
  add_output_options(check, theorem_c, {"table", "json"});
  check->add_option("--random", random_games, "also check this many random small games");
  check->add_option("--seed", theorem_seed, "random seed");

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*list) return cmd_list(out, list_format);
    if (*describe) return cmd_describe(describe_c, out);
    if (*analyze) return cmd_analyze(analyze_c, no_lp, errorfree, out);
    if (*thresholds) return cmd_thresholds(thresholds_c, out);
    if (*sweep) return cmd_sweep(sweep_c, sweep_param, sweep_from, sweep_to, sweep_step, out, err);
    if (*play) return cmd_play(play_c, strategy, rounds, seed, mode, p, eta, transcript, out, err);
    if (*verify_ks) return cmd_verify_ks(ks_c, out);
    if (*check) {
      if (theorem_games.empty()) theorem_games = {"ghz", "magic-square"};
      return cmd_check_theorems(theorem_c, theorem_games, random_games, theorem_seed, out);
    }
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const InputError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedModelError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ptlab::cli
