#include "ptlab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <thread>

#include "ptlab/errors.hpp"

namespace ptlab::classical {

ProfileSpace::ProfileSpace(const Game& game, bool allow_bottom) : allow_bottom_(allow_bottom), size_(1) {
  for (std::size_t p = 0; p < game.players(); ++p) {
    const std::size_t radix = game.output_alphabet(p).size() + (allow_bottom ? 1 : 0);
    const std::size_t inputs = game.input_alphabet(p).size();
    radix_.push_back(radix);
    inputs_.push_back(inputs);
    mpz_class tables;
    mpz_ui_pow_ui(tables.get_mpz_t(), radix, inputs);
    size_ *= tables;
    table_count_.push_back(tables.fits_ulong_p() ? tables.get_ui()
                                                 : std::numeric_limits<std::uint64_t>::max());
  }
}

std::string ProfileSpace::size_text() const {
  std::string decimal = size_.get_str();
  if (decimal.size() <= 30) return decimal;
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, size_.get_mpz_t());
  char buf[64];
  std::snprintf(buf, sizeof buf, "~2^%.1f", static_cast<double>(exp) + std::log2(mantissa));
  return buf;
}

void ProfileSpace::require_within(std::uint64_t cap) const {
  if (size_ > mpz_class(std::to_string(cap)))
    throw CapacityError("strategy space", size_text(), cap);
  decode_tables();
}

void ProfileSpace::decode_tables() const {
  if (!decoded_.empty()) return;
  decoded_.resize(radix_.size());
  for (std::size_t p = 0; p < radix_.size(); ++p) {
    auto& tables = decoded_[p];
    tables.assign(table_count_[p], std::vector<Symbol>(inputs_[p]));
    for (std::uint64_t t = 0; t < table_count_[p]; ++t) {
      std::uint64_t rest = t;
      for (std::size_t x = inputs_[p]; x-- > 0;) {
        const auto digit = static_cast<std::size_t>(rest % radix_[p]);
        rest /= radix_[p];
        tables[t][x] = (allow_bottom_ && digit == radix_[p] - 1) ? kBottom : static_cast<Symbol>(digit);
      }
    }
  }
}

Symbol ProfileSpace::output(std::size_t player, std::uint64_t table, Symbol input) const {
  return decoded_.at(player).at(table).at(static_cast<std::size_t>(input));
}

DeterministicStrategy ProfileSpace::strategy(std::uint64_t profile) const {
  std::vector<std::vector<Symbol>> tables(radix_.size());
  for (std::size_t p = radix_.size(); p-- > 0;) {
    tables[p] = decoded_.at(p).at(profile % table_count_[p]);
    profile /= table_count_[p];
  }
  return DeterministicStrategy(std::move(tables), allow_bottom_);
}

std::string_view to_string(Method method) {
  return method == Method::kEnumeration ? "enumeration" : "linear-program";
}

namespace {

enum class ScanMode { kPlain, kErrorFree };

struct Scan {
  std::uint64_t best_count = 0;
  std::uint64_t best_index = std::numeric_limits<std::uint64_t>::max();
  std::map<WinMask, std::uint64_t> columns;  // win set -> first profile with it
  std::size_t kept_profiles = 0;

  void merge(Scan&& other) {
    if (other.best_index != std::numeric_limits<std::uint64_t>::max() &&
        (other.best_count > best_count ||
         (other.best_count == best_count && other.best_index < best_index))) {
      best_count = other.best_count;
      best_index = other.best_index;
    }
    for (auto& [mask, index] : other.columns) {
      auto [it, inserted] = columns.emplace(mask, index);
      if (!inserted) it->second = std::min(it->second, index);
    }
    kept_profiles += other.kept_profiles;
  }
};

void scan_range(const Game& game, const ProfileSpace& space, std::span<const Question> legit,
                ScanMode mode, std::uint64_t lo, std::uint64_t hi, Scan& out) {
  const std::size_t n = space.players();
  std::vector<std::uint64_t> digit(n);
  std::uint64_t rest = lo;
  for (std::size_t p = n; p-- > 0;) {
    digit[p] = rest % space.tables(p);
    rest /= space.tables(p);
  }
  const std::size_t words = (legit.size() + 63) / 64;
  WinMask mask(words);
  Answer answer(n);
  std::vector<const Symbol*> rows(n);
  for (std::size_t p = 0; p < n; ++p) rows[p] = space.table_outputs(p, digit[p]);
  for (std::uint64_t index = lo; index < hi; ++index) {
    std::fill(mask.begin(), mask.end(), 0);
    std::uint64_t count = 0;
    bool rejected = false;
    for (std::size_t qi = 0; qi < legit.size(); ++qi) {
      const Symbol* q = legit[qi].data();
      bool draw = false;
      for (std::size_t p = 0; p < n; ++p) {
        answer[p] = rows[p][q[p]];
        draw = draw || answer[p] == kBottom;
      }
      if (draw) continue;
      if (game.appropriate(legit[qi], answer)) {
        mask[qi / 64] |= std::uint64_t{1} << (qi % 64);
        ++count;
      } else if (mode == ScanMode::kErrorFree) {
        rejected = true;
        break;
      }
    }
    if (!rejected) {
      ++out.kept_profiles;
      if (out.best_index == std::numeric_limits<std::uint64_t>::max() || count > out.best_count) {
        out.best_count = count;
        out.best_index = index;
      }
      out.columns.emplace(mask, index);
    }
    for (std::size_t p = n; p-- > 0;) {
      const bool carry = ++digit[p] == space.tables(p);
      if (carry) digit[p] = 0;
      rows[p] = space.table_outputs(p, digit[p]);
      if (!carry) break;
    }
  }
}

Scan scan_profiles(const Game& game, const ProfileSpace& space, std::span<const Question> legit,
                   ScanMode mode, unsigned threads) {
  const std::uint64_t total = space.size().get_ui();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<Scan> parts(threads);
  if (threads == 1) {
    scan_range(game, space, legit, mode, 0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = std::min(total, chunk * t), hi = std::min(total, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { scan_range(game, space, legit, mode, lo, hi, parts[t]); });
    }
    for (auto& th : pool) th.join();
  }
  Scan result = std::move(parts[0]);
  for (unsigned t = 1; t < threads; ++t) result.merge(std::move(parts[t]));
  return result;
}

bool subset_of(const WinMask& a, const WinMask& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if ((a[w] & ~b[w]) != 0) return false;
  return true;
}

// Columns ordered by their representative profile index.
std::vector<std::pair<WinMask, std::uint64_t>> lp_columns(const Scan& scan, bool prune) {
  std::vector<std::pair<WinMask, std::uint64_t>> cols(scan.columns.begin(), scan.columns.end());
  std::sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  if (!prune) return cols;
  std::vector<std::pair<WinMask, std::uint64_t>> kept;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cols.size() && !dominated; ++j)
      dominated = i != j && subset_of(cols[i].first, cols[j].first);
    if (!dominated) kept.push_back(cols[i]);
  }
  return kept;
}

struct LpResult {
  Rational value;
  MixedStrategy strategy;
  std::size_t columns = 0;
};

LpResult solve_columns(const Game& game, const ProfileSpace& space, std::span<const Question> legit,
                       const std::vector<std::pair<WinMask, std::uint64_t>>& cols) {
  lp::Matrix payoff(legit.size(), std::vector<Rational>(cols.size()));
  for (std::size_t q = 0; q < legit.size(); ++q)
    for (std::size_t j = 0; j < cols.size(); ++j)
      payoff[q][j] = ((cols[j].first[q / 64] >> (q % 64)) & 1) ? 1 : 0;
  const auto solution = lp::solve_matrix_game(payoff);

  LpResult out;
  out.value = solution.value;
  out.columns = cols.size();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (sgn(solution.column_mixture[j]) == 0) continue;
    out.strategy.profiles.push_back(space.strategy(cols[j].second));
    out.strategy.weights.push_back(solution.column_mixture[j]);
  }
  if (worst_case_success(game, out.strategy, legit) != out.value)
    throw ValidationError("LP mixture does not certify the reported value");
  return out;
}

bool round_won(const Game& game, const DeterministicStrategy& s, const Question& q) {
  const Answer a = s.answer(q);
  if (std::any_of(a.begin(), a.end(), [](Symbol v) { return v == kBottom; })) return false;
  return game.appropriate(q, a);
}

}  // namespace

Rational uniform_success(const Game& game, const MixedStrategy& strategy,
                         std::span<const Question> legitimate) {
  if (legitimate.empty()) throw InputError("no legitimate questions");
  Rational total = 0;
  for (std::size_t j = 0; j < strategy.profiles.size(); ++j) {
    std::uint64_t wins = 0;
    for (const auto& q : legitimate) wins += round_won(game, strategy.profiles[j], q) ? 1 : 0;
    total += strategy.weights[j] * Rational(static_cast<unsigned long>(wins),
                                            static_cast<unsigned long>(legitimate.size()));
  }
  total.canonicalize();
  return total;
}

Rational worst_case_success(const Game& game, const MixedStrategy& strategy,
                            std::span<const Question> legitimate) {
  if (legitimate.empty()) throw InputError("no legitimate questions");
  std::optional<Rational> worst;
  for (const auto& q : legitimate) {
    Rational p = 0;
    for (std::size_t j = 0; j < strategy.profiles.size(); ++j)
      if (round_won(game, strategy.profiles[j], q)) p += strategy.weights[j];
    if (!worst || p < *worst) worst = p;
  }
  return *worst;
}

ClassicalBounds optimal_success_proportion(const Game& game, std::uint64_t cap, unsigned threads) {
  AnalysisOptions options;
  options.cap = cap;
  options.threads = threads;
  options.solve_lp = false;
  return optimal_success_probability(game, options);
}

ClassicalBounds optimal_success_probability(const Game& game, const AnalysisOptions& options) {
  const auto legit = legitimate_questions(game, options.cap);
  ProfileSpace space(game, false);
  ClassicalBounds out;
  out.game = game.name();
  out.params = game.params();
  out.legitimate_questions = legit.size();
  out.strategy_space_size = space.size();
  out.strategy_space_text = space.size_text();
  space.require_within(options.cap);

  const Scan scan = scan_profiles(game, space, legit, ScanMode::kPlain, options.threads);
  out.omega_tilde = Rational(static_cast<unsigned long>(scan.best_count),
                             static_cast<unsigned long>(legit.size()));
  out.omega_tilde.canonicalize();
  out.best_strategy = space.strategy(scan.best_index);
  out.best_single_worst_case = scan.best_count == legit.size() ? 1 : 0;
  out.distinct_columns = scan.columns.size();
  out.method = Method::kEnumeration;
  if (!options.solve_lp) return out;

  auto lp = solve_columns(game, space, legit, lp_columns(scan, options.prune_dominated));
  out.omega = lp.value;
  out.omega_strategy = std::move(lp.strategy);
  out.lp_columns = lp.columns;
  out.method = Method::kLinearProgram;
  return out;
}

ErrorFreeBounds optimal_errorfree_classical(const Game& game, const AnalysisOptions& options) {
  const auto legit = legitimate_questions(game, options.cap);
  ProfileSpace space(game, true);
  ErrorFreeBounds out;
  out.strategy_space_size = space.size();
  out.strategy_space_text = space.size_text();
  space.require_within(options.cap);

  const Scan scan = scan_profiles(game, space, legit, ScanMode::kErrorFree, options.threads);
  out.never_losing_profiles = scan.kept_profiles;
  auto lp = solve_columns(game, space, legit, lp_columns(scan, options.prune_dominated));
  out.value = lp.value;
  out.strategy = std::move(lp.strategy);
  out.lp_columns = lp.columns;
  return out;
}

bool TheoremReport::passed() const {
  return omega_le_omega_tilde && gap_holds &&
         std::all_of(mixed_samples.begin(), mixed_samples.end(), [](const Sample& s) { return s.ok; });
}

TheoremReport check_framework_theorems(const Game& game, const AnalysisOptions& options,
                                       std::size_t mixed_samples, std::size_t rounds,
                                       std::uint64_t seed) {
  AnalysisOptions full = options;
  full.solve_lp = true;
  const auto bounds = optimal_success_probability(game, full);
  const auto legit = legitimate_questions(game, options.cap);

  TheoremReport report;
  report.game = game.name();
  report.legitimate_questions = legit.size();
  report.omega_tilde = bounds.omega_tilde;
  report.omega = *bounds.omega;
  report.omega_le_omega_tilde = report.omega <= report.omega_tilde;
  report.gap_applies = report.omega_tilde < 1;
  if (report.gap_applies) {
    const auto p = static_cast<unsigned long>(legit.size());
    report.gap_holds = report.omega_tilde <= Rational(p - 1, p);
  }

  ProfileSpace space(game, false);
  space.require_within(options.cap);
  const std::uint64_t total = space.size().get_ui();
  std::mt19937_64 rng(seed);
  const double wt = report.omega_tilde.get_d();
  const double sigma = rounds > 0 ? std::sqrt(wt * (1 - wt) / static_cast<double>(rounds)) : 0.0;
  for (std::size_t s = 0; s < mixed_samples; ++s) {
    MixedStrategy mix;
    const std::size_t k = 1 + rng() % 4;
    std::vector<double> w;
    for (std::size_t j = 0; j < k; ++j) {
      mix.profiles.push_back(space.strategy(rng() % total));
      const unsigned long weight = 1 + rng() % 10;
      mix.weights.emplace_back(weight);
      w.push_back(static_cast<double>(weight));
    }
    Rational sum = 0;
    for (const auto& x : mix.weights) sum += x;
    for (auto& x : mix.weights) x /= sum;

    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    std::uniform_int_distribution<std::size_t> question(0, legit.size() - 1);
    std::size_t wins = 0;
    for (std::size_t r = 0; r < rounds; ++r)
      wins += round_won(game, mix.profiles[pick(rng)], legit[question(rng)]) ? 1 : 0;
    TheoremReport::Sample sample;
    sample.empirical = rounds > 0 ? static_cast<double>(wins) / static_cast<double>(rounds) : 0.0;
    sample.bound = wt + 4 * sigma;
    sample.ok = sample.empirical <= sample.bound &&
                uniform_success(game, mix, legit) <= report.omega_tilde;
    report.mixed_samples.push_back(sample);
  }
  return report;
}

PValueBound classical_pvalue_bound(const Rational& omega_tilde, std::uint64_t wins,
                                   std::uint64_t rounds) {
  if (wins > rounds) throw InputError("wins exceed rounds");
  if (omega_tilde < 0 || omega_tilde > 1) throw InputError("omega_tilde must lie in [0, 1]");
  PValueBound out;
  out.assumption =
      "rounds independent, questions uniform over the legitimate set, every classical "
      "strategy wins a round with probability at most omega_tilde";
  if (wins == 0) {
    out.value = 1.0;
    out.exact = Rational(1);
    return out;
  }

  if (rounds <= 2000) {
    // sum_{j>=wins} C(n,j) a^j (d-a)^(n-j) / d^n with omega_tilde = a/d.
    const mpz_class a = omega_tilde.get_num(), d = omega_tilde.get_den(), b = d - a;
    const auto n = static_cast<unsigned long>(rounds);
    mpz_class numerator = 0, c, pa, pb;
    for (unsigned long j = static_cast<unsigned long>(wins); j <= n; ++j) {
      mpz_bin_uiui(c.get_mpz_t(), n, j);
      mpz_pow_ui(pa.get_mpz_t(), a.get_mpz_t(), j);
      mpz_pow_ui(pb.get_mpz_t(), b.get_mpz_t(), n - j);
      numerator += c * pa * pb;
    }
    mpz_class denominator;
    mpz_pow_ui(denominator.get_mpz_t(), d.get_mpz_t(), n);
    Rational exact(numerator, denominator);
    exact.canonicalize();
    out.exact = exact;
    // get_d underflows to 0 for tiny tails; go through the log for those.
    const double direct = exact.get_d();
    if (direct > 0 || sgn(exact) == 0) {
      out.value = direct;
    } else {
      long e_num = 0, e_den = 0;
      const double m_num = mpz_get_d_2exp(&e_num, exact.get_num_mpz_t());
      const double m_den = mpz_get_d_2exp(&e_den, exact.get_den_mpz_t());
      const double log2v = std::log2(m_num) - std::log2(m_den) + static_cast<double>(e_num - e_den);
      out.value = std::exp2(log2v);
    }
    return out;
  }

  const double p = omega_tilde.get_d();
  if (p >= 1.0) {
    out.value = 1.0;
    return out;
  }
  if (p <= 0.0) {
    out.value = 0.0;
    return out;
  }
  const double n = static_cast<double>(rounds);
  const double lp = std::log(p), lq = std::log1p(-p);
  double peak = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(rounds - wins + 1);
  for (std::uint64_t j = wins; j <= rounds; ++j) {
    const double k = static_cast<double>(j);
    const double t = std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1) + k * lp + (n - k) * lq;
    terms.push_back(t);
    peak = std::max(peak, t);
  }
  double acc = 0;
  for (double t : terms) acc += std::exp(t - peak);
  out.value = std::min(1.0, std::exp(peak + std::log(acc)));
  return out;
}

}  // namespace ptlab::classical
