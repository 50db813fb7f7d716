// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ptlab/catalog.hpp"
#include "ptlab/classical.hpp"
#include "ptlab/imperfection.hpp"
#include "ptlab/ks_set.hpp"
#include "ptlab/referee.hpp"

using namespace ptlab;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational parity_omega(int n) {
  mpz_class den = 1;
  den <<= static_cast<unsigned>((n + 1) / 2);
  return Rational(1, 2) + Rational(1) / Rational(den);
}

double parity_p_star(int n) {
  const double e = n % 2 ? (1.0 - 3 * n) / (2 * n) : (2.0 - 3 * n) / (2 * n);
  return 0.5 + std::pow(2.0, e);
}

double parity_eta_star(int n) { return 0.5 * std::pow(4.0, 1.0 / n); }

std::vector<catalog::GameBundle> certainty_suite() {
  std::vector<catalog::GameBundle> out;
  out.push_back(catalog::build_mermin_ghz());
  for (int n : {4, 5, 6}) out.push_back(catalog::build_parity_game(n, 1));
  for (int n : {4, 5}) out.push_back(catalog::build_extended_parity(n));
  for (int m : {1, 2, 3}) out.push_back(catalog::build_dj_game(m));
  out.push_back(catalog::build_magic_square_game());
  for (int m : {2, 4, 6}) out.push_back(catalog::build_matching_game(m));
  out.push_back(catalog::build_colouring_game(ks::shipped_cabello18()));
  for (int mod : {2, 4}) out.push_back(catalog::build_boyer_game(3, mod));
  return out;
}

std::string label(const Game& g) {
  std::string s = g.name();
  for (const auto& [k, v] : g.params()) s += " " + k + "=" + std::to_string(v);
  return s;
}

Check criterion_certainty() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& b : certainty_suite()) {
    const auto r = verify_certainty(b.game, b.strategy);
    worst = std::max(worst, r.worst_losing_probability);
    c.expect(r.worst_losing_probability <= 1e-9, label(b.game) + " loses with probability " +
                                                      fmt("%.3g", r.worst_losing_probability));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 120, fmt("took %.1f s", secs));
  if (c.ok) c.detail = "17 games, worst losing mass " + fmt("%.2g", worst) + ", " + fmt("%.1f s", secs);
  return c;
}

Check criterion_omega_tilde() {
  Check c;
  auto expect_value = [&](const Game& g, const Rational& want) {
    const auto b = classical::optimal_success_proportion(g, 1'000'000);
    c.expect(b.omega_tilde == want, label(g) + " gave " + b.omega_tilde.get_str() + ", want " + want.get_str());
  };
  expect_value(catalog::build_mermin_ghz().game, Rational(3, 4));
  expect_value(catalog::build_magic_square_game().game, Rational(8, 9));
  for (int n = 3; n <= 5; ++n) expect_value(catalog::build_parity_game(n, 1).game, parity_omega(n));
  if (c.ok) c.detail = "ghz 3/4, magic-square 8/9, parity n=3..5 = 1/2 + 2^-ceil(n/2)";
  return c;
}

Check criterion_omega_lp() {
  Check c;
  std::vector<Game> games{catalog::build_mermin_ghz().game, catalog::build_magic_square_game().game};
  for (int n = 3; n <= 5; ++n) games.push_back(catalog::build_parity_game(n, 1).game);
  for (const auto& g : games) {
    const auto b = classical::optimal_success_probability(g);
    if (!b.omega) {
      c.fail(label(g) + ": no LP value");
      continue;
    }
    const double gap = std::fabs(Rational(*b.omega - b.omega_tilde).get_d());
    c.expect(gap <= 1e-9, label(g) + fmt(" omega - omega_tilde = %.3g", gap));
  }
  if (c.ok) c.detail = "omega == omega_tilde exactly on 5 games";
  return c;
}

Check criterion_thresholds() {
  Check c;
  std::string values;
  for (int n = 3; n <= 5; ++n) {
    const auto b = catalog::build_parity_game(n, 1);
    const auto bounds = classical::optimal_success_probability(b.game);
    const auto p = imperfection::noise_threshold(b.game, b.strategy, bounds);
    const auto ef = classical::optimal_errorfree_classical(b.game);
    const auto eta = imperfection::efficiency_threshold(b.game, b.strategy, ef.value);
    c.expect(p.found && std::fabs(p.value - parity_p_star(n)) <= 1e-6,
             "n=" + std::to_string(n) + fmt(" p* = %.9f", p.value) + fmt(" vs %.9f", parity_p_star(n)));
    c.expect(eta.found && std::fabs(eta.value - parity_eta_star(n)) <= 1e-6,
             "n=" + std::to_string(n) + fmt(" eta* = %.9f", eta.value) + fmt(" vs %.9f", parity_eta_star(n)));
    if (n == 3) c.expect(ef.value == Rational(1, 2), "n=3 error-free value " + ef.value.get_str());
    values += (values.empty() ? "" : ", ") + ("n=" + std::to_string(n)) + fmt(" p*=%.6f", p.value) +
              fmt(" eta*=%.6f", eta.value);
  }
  if (c.ok) c.detail = values;
  return c;
}

Check criterion_trends() {
  Check c;
  const double limit = std::pow(std::cos(std::numbers::pi / 8), 2);
  std::vector<double> p(9), eta(9);
  classical::AnalysisOptions wide;
  // 9^8 bottom-allowed profiles for n = 8.
  wide.cap = 50'000'000;
  for (int n = 3; n <= 8; ++n) {
    const auto b = catalog::build_parity_game(n, 1);
    const imperfection::ImperfectQuantum model(b.game, b.strategy);
    const auto bounds = classical::optimal_success_probability(b.game);
    p[n] = imperfection::noise_threshold(model, bounds.omega->get_d()).value;
    const auto ef = classical::optimal_errorfree_classical(b.game, wide);
    eta[n] = imperfection::efficiency_threshold(model, ef.value.get_d()).value;
    c.expect(p[n] > limit, "p*(" + std::to_string(n) + ") below the limit");
    c.expect(eta[n] > 0.5, "eta*(" + std::to_string(n) + ") at or below 1/2");
  }
  // Ceil(n/2) makes p* alternate; each parity class decreases toward the limit.
  for (int n = 5; n <= 8; ++n)
    c.expect(p[n] < p[n - 2], "p*(" + std::to_string(n) + ") >= p*(" + std::to_string(n - 2) + ")");
  for (int n = 4; n <= 8; ++n)
    c.expect(eta[n] < eta[n - 1], "eta*(" + std::to_string(n) + ") >= eta*(" + std::to_string(n - 1) + ")");
  c.expect(p[7] - limit < p[3] - limit && p[8] - limit < p[4] - limit, "p* gap to limit not shrinking");
  if (c.ok) {
    c.detail = "p* =";
    for (int n = 3; n <= 8; ++n) c.detail += fmt(" %.6f", p[n]);
    c.detail += fmt(" (limit %.6f); eta* =", limit);
    for (int n = 3; n <= 8; ++n) c.detail += fmt(" %.6f", eta[n]);
  }
  return c;
}

Check criterion_ks() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto v = ks::verify_ks_property(ks::shipped_cabello18());
  const double secs = seconds_since(t0);
  c.expect(v.has_ks_property(), "shipped set has a colouring");
  c.expect(secs < 60, fmt("search took %.1f s", secs));
  const auto control = ks::KSSet::load_file(std::string(PTLAB_KS_DATA_DIR) + "/control_d3_single_context.json");
  const auto cv = ks::verify_ks_property(control);
  c.expect(!cv.has_ks_property() && cv.colouring && ks::is_valid_colouring(control, *cv.colouring),
           "control set gave no valid witness");
  if (c.ok)
    c.detail = "18-vector set non-colourable (" + std::to_string(v.nodes) + " nodes, " + fmt("%.3f s", secs) +
               "); control set coloured";
  return c;
}

Check criterion_theorems() {
  Check c;
  std::vector<Game> games{catalog::build_mermin_ghz().game,
                          catalog::build_parity_game(4, 1).game,
                          catalog::build_parity_game(5, 1).game,
                          catalog::build_parity_game(3, 2).game,
                          catalog::build_extended_parity(4).game,
                          catalog::build_dj_game(1).game,
                          catalog::build_magic_square_game().game,
                          catalog::build_matching_game(2).game,
                          catalog::build_boyer_game(3, 2).game};
  for (std::uint64_t k = 0; k < 100; ++k) games.push_back(catalog::build_random_game(1000 + k));
  std::size_t gap_cases = 0, samples = 0;
  for (std::size_t i = 0; i < games.size(); ++i) {
    const auto r = classical::check_framework_theorems(games[i], {}, 8, 4000, 1 + i);
    gap_cases += r.gap_applies;
    samples += r.mixed_samples.size();
    c.expect(r.omega_le_omega_tilde, label(games[i]) + ": omega > omega_tilde");
    c.expect(r.gap_holds, label(games[i]) + ": omega_tilde > (#P-1)/#P");
    for (const auto& s : r.mixed_samples)
      c.expect(s.ok, label(games[i]) + fmt(": mixed sample %.4f", s.empirical) + fmt(" > %.4f", s.bound));
  }
  if (c.ok)
    c.detail = std::to_string(games.size()) + " games (9 catalog, 100 random), " + std::to_string(gap_cases) +
               " with omega_tilde < 1, " + std::to_string(samples) + " mixed samples";
  return c;
}

Check criterion_harness() {
  Check c;
  std::vector<catalog::GameBundle> games{catalog::build_mermin_ghz(),
                                         catalog::build_parity_game(4, 1),
                                         catalog::build_extended_parity(5),
                                         catalog::build_dj_game(3),
                                         catalog::build_magic_square_game(),
                                         catalog::build_matching_game(4),
                                         catalog::build_colouring_game(ks::shipped_cabello18()),
                                         catalog::build_boyer_game(3, 4)};
  for (const auto& b : games) {
    const auto s = referee::run_rounds(b.game, referee::PlayerExecutor::quantum(b.strategy), 100'000,
                                       referee::QuestionMode::kUniformOverPromise, 2024);
    c.expect(s.losses == 0 && s.wins == 100'000, label(b.game) + ": " + std::to_string(s.losses) + " losses");
  }

  const auto ghz = catalog::build_mermin_ghz().game;
  const auto best = classical::optimal_success_proportion(ghz).best_strategy;
  const auto s = referee::run_rounds(ghz, referee::PlayerExecutor::classical(best), 10'000,
                                     referee::QuestionMode::kUniformOverPromise, 2024);
  const double sigma = std::sqrt(10'000 * 0.75 * 0.25);
  c.expect(std::fabs(static_cast<double>(s.wins) - 7500) <= 4 * sigma,
           "classical GHZ wins " + std::to_string(s.wins) + " outside 7500 +- 4 sigma");

  const auto pv = classical::classical_pvalue_bound(Rational(3, 4), 20, 20);
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), 3, 20);
  mpz_ui_pow_ui(den.get_mpz_t(), 4, 20);
  c.expect(pv.exact && *pv.exact == Rational(num, den), "p-value for 20/20 is not (3/4)^20");
  if (c.ok)
    c.detail = "8 games x 1e5 quantum rounds, 0 losses; classical GHZ " + std::to_string(s.wins) +
               "/10000; p(20/20) = " + pv.exact->get_str();
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"1 quantum certainty", criterion_certainty},
      {"2 omega_tilde exact values", criterion_omega_tilde},
      {"3 omega by LP equals omega_tilde", criterion_omega_lp},
      {"4 noise and efficiency thresholds", criterion_thresholds},
      {"5 threshold trends in n", criterion_trends},
      {"6 Kochen-Specker verification", criterion_ks},
      {"7 framework properties", criterion_theorems},
      {"8 harness statistics", criterion_harness},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c = run();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %s (%.1f s): %s\n", c.ok ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                c.detail.c_str());
    std::fflush(stdout);
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
