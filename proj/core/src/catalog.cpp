#include "ptlab/catalog.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "ptlab/errors.hpp"

namespace ptlab::catalog {

using quantum::Complex;
using quantum::ComputationalMeasurement;
using quantum::LocalProgram;
using quantum::RawOutcome;
using quantum::RegisterLayout;
using quantum::SubspaceMeasurement;
using quantum::SubspacePartition;
using quantum::Unitary;

namespace {

int ceil_lg(int n) {
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  return bits;
}

int parity_of(std::span<const Symbol> bits) {
  int s = 0;
  for (Symbol b : bits) s ^= (b & 1);
  return s;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

}  // namespace

// --------------------------------------------------------------------------
// Parity family

GameBundle build_parity_game(int n, int l) {
  require(n >= 3 && n <= 20, "parity game needs 3 <= n <= 20");
  require(l >= 1 && l <= 16, "parity game needs 1 <= l <= 16");
  const std::int64_t modulus = std::int64_t{1} << l;

  std::vector<Alphabet> inputs(static_cast<std::size_t>(n), Alphabet::bit_strings_msb_first(l));
  std::vector<Alphabet> outputs(static_cast<std::size_t>(n), Alphabet::bit_strings_msb_first(1));
  auto promise = [modulus](std::span<const Symbol> q) {
    return std::accumulate(q.begin(), q.end(), std::int64_t{0}) % modulus == 0;
  };
  auto winning = [modulus](std::span<const Symbol> q, std::span<const Symbol> a) {
    const std::int64_t sum = std::accumulate(q.begin(), q.end(), std::int64_t{0});
    return parity_of(a) == (sum / modulus) % 2;
  };
  std::string name = (n == 3 && l == 1) ? "ghz" : "parity";
  Game game(name, {{"n", n}, {"l", l}}, std::move(inputs), std::move(outputs), promise, winning);

  auto programs = [modulus](std::size_t, Symbol x) {
    const Complex phase = std::polar(1.0, std::numbers::pi * x / static_cast<double>(modulus));
    const std::vector<Complex> diag{1.0, phase};
    return LocalProgram{Unitary::diagonal(diag), Unitary::walsh_hadamard(1),
                        ComputationalMeasurement{}};
  };
  auto post = [](std::size_t, Symbol, const RawOutcome& raw) { return static_cast<Symbol>(raw.at(0)); };
  QuantumStrategy strategy(RegisterLayout::qubits(static_cast<std::size_t>(n), 1), quantum::ghz(),
                           programs, post,
                           "GHZ state; phase S(x_i) on |1>, Hadamard, measure the qubit");
  return {std::move(game), std::move(strategy)};
}

GameBundle build_mermin_ghz() { return build_parity_game(3, 1); }

int extended_parity_input_bits(int n) { return std::max(1, ceil_lg(n) - 1); }

GameBundle build_extended_parity(int n) {
  require(n >= 3, "extended parity game needs n >= 3");
  auto bundle = build_parity_game(n, extended_parity_input_bits(n));
  auto params = bundle.game.params();
  Game renamed("extended-parity", params,
               [&] {
                 std::vector<Alphabet> v;
                 for (std::size_t i = 0; i < bundle.game.players(); ++i)
                   v.push_back(bundle.game.input_alphabet(i));
                 return v;
               }(),
               [&] {
                 std::vector<Alphabet> v;
                 for (std::size_t i = 0; i < bundle.game.players(); ++i)
                   v.push_back(bundle.game.output_alphabet(i));
                 return v;
               }(),
               [g = bundle.game](std::span<const Symbol> q) { return g.promise_holds(q); },
               [g = bundle.game](std::span<const Symbol> q, std::span<const Symbol> a) {
                 return g.appropriate(q, a);
               });
  return {std::move(renamed), std::move(bundle.strategy)};
}

// --------------------------------------------------------------------------
// Deutsch-Jozsa

GameBundle build_dj_game(int m) {
  require(m >= 1 && m <= 4, "Deutsch-Jozsa game needs 1 <= m <= 4");
  const int n = 1 << m;
  const int half = n / 2;

  std::vector<Alphabet> inputs(2, Alphabet::bit_strings_lsb_first(n));
  std::vector<Alphabet> outputs(2, Alphabet::bit_strings_msb_first(m));
  auto promise = [half](std::span<const Symbol> q) {
    const int d = std::popcount(static_cast<unsigned>(q[0] ^ q[1]));
    return d == 0 || d == half;
  };
  auto winning = [](std::span<const Symbol> q, std::span<const Symbol> a) {
    return (a[0] == a[1]) == (q[0] == q[1]);
  };
  Game game("dj", {{"m", m}}, std::move(inputs), std::move(outputs), promise, winning);

  auto programs = [n, m](std::size_t, Symbol x) {
    std::vector<Complex> diag(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) diag[static_cast<std::size_t>(j)] = ((x >> j) & 1) ? -1.0 : 1.0;
    return LocalProgram{Unitary::diagonal(diag), Unitary::walsh_hadamard(m),
                        ComputationalMeasurement{}};
  };
  auto post = [](std::size_t, Symbol, const RawOutcome& raw) { return static_cast<Symbol>(raw.at(0)); };
  QuantumStrategy strategy(RegisterLayout::qubits(2, m), quantum::UniformDiagonal{n}, programs,
                           post,
                           "(1/sqrt n) sum |j>|j>; phase (-1)^{x_j}, Walsh-Hadamard, measure");
  return {std::move(game), std::move(strategy)};
}

// --------------------------------------------------------------------------
// Magic square

namespace {

const Complex kI{0.0, 1.0};

Unitary magic_alice(int row) {
  const double r2 = 1.0 / std::sqrt(2.0);
  switch (row) {
    case 0:
      return Unitary(4, {kI * r2, 0, 0, r2,
                         0, -kI * r2, r2, 0,
                         0, kI * r2, r2, 0,
                         r2, 0, 0, kI * r2});
    case 1:
      return Unitary(4, {0.5 * kI, 0.5, 0.5, 0.5 * kI,
                         -0.5 * kI, 0.5, -0.5, 0.5 * kI,
                         0.5 * kI, 0.5, -0.5, -0.5 * kI,
                         -0.5 * kI, 0.5, 0.5, -0.5 * kI});
    default:
      return Unitary(4, {-0.5, -0.5, -0.5, 0.5,
                         0.5, 0.5, -0.5, 0.5,
                         0.5, -0.5, 0.5, 0.5,
                         0.5, -0.5, -0.5, -0.5});
  }
}

Unitary magic_bob(int column) {
  const double r2 = 1.0 / std::sqrt(2.0);
  switch (column) {
    case 0:
      return Unitary(4, {0.5 * kI, -0.5 * kI, 0.5, 0.5,
                         -0.5 * kI, -0.5 * kI, 0.5, -0.5,
                         0.5, 0.5, -0.5 * kI, 0.5 * kI,
                         -0.5 * kI, 0.5 * kI, 0.5, 0.5});
    case 1:
      return Unitary(4, {-0.5, 0.5 * kI, 0.5, 0.5 * kI,
                         0.5, 0.5 * kI, 0.5, -0.5 * kI,
                         0.5, -0.5 * kI, 0.5, 0.5 * kI,
                         -0.5, -0.5 * kI, 0.5, -0.5 * kI});
    default:
      return Unitary(4, {r2, 0, 0, r2,
                         -r2, 0, 0, r2,
                         0, r2, r2, 0,
                         0, r2, -r2, 0});
  }
}

// Cell k (0-based, left to right) of a three-bit symbol, most significant first.
int cell(Symbol s, int k) { return (s >> (2 - k)) & 1; }

}  // namespace

GameBundle build_magic_square_game() {
  std::vector<Alphabet> inputs(2, Alphabet::numeric(3, 1));
  std::vector<Alphabet> outputs(2, Alphabet::bit_strings_msb_first(3));
  auto promise = [](std::span<const Symbol>) { return true; };
  auto winning = [](std::span<const Symbol> q, std::span<const Symbol> a) {
    const Symbol row = a[0], col = a[1];
    const bool row_even = (cell(row, 0) ^ cell(row, 1) ^ cell(row, 2)) == 0;
    const bool col_odd = (cell(col, 0) ^ cell(col, 1) ^ cell(col, 2)) == 1;
    return row_even && col_odd && cell(row, q[1]) == cell(col, q[0]);
  };
  Game game("magic-square", {}, std::move(inputs), std::move(outputs), promise, winning);

  auto programs = [](std::size_t player, Symbol x) {
    return LocalProgram{player == 0 ? magic_alice(x) : magic_bob(x), ComputationalMeasurement{}};
  };
  // Two measured bits, then the third bit fixes the parity: even for rows,
  // odd for columns.
  auto post = [](std::size_t player, Symbol, const RawOutcome& raw) {
    const auto r = static_cast<Symbol>(raw.at(0));
    const int third = ((r >> 1) ^ r ^ (player == 0 ? 0 : 1)) & 1;
    return static_cast<Symbol>((r << 1) | third);
  };
  QuantumStrategy strategy(RegisterLayout::qubits(2, 2), quantum::MagicSquarePair{}, programs,
                           post, "two Bell-pair state; A_x / B_y, measure two qubits, complete parity");
  return {std::move(game), std::move(strategy)};
}

// --------------------------------------------------------------------------
// Matching

namespace {

void matchings_rec(std::vector<bool>& used, Matching& current, std::vector<Matching>& out) {
  const int m = current.m;
  int first = 0;
  while (first < m && used[static_cast<std::size_t>(first)]) ++first;
  if (first == m) {
    out.push_back(current);
    return;
  }
  used[static_cast<std::size_t>(first)] = true;
  for (int partner = first + 1; partner < m; ++partner) {
    if (used[static_cast<std::size_t>(partner)]) continue;
    used[static_cast<std::size_t>(partner)] = true;
    current.pairs.emplace_back(first, partner);
    matchings_rec(used, current, out);
    current.pairs.pop_back();
    used[static_cast<std::size_t>(partner)] = false;
  }
  used[static_cast<std::size_t>(first)] = false;
}

}  // namespace

std::vector<Matching> enumerate_matchings(int m, std::uint64_t cap) {
  require(m >= 2 && m % 2 == 0, "matchings need an even m >= 2");
  std::uint64_t count = 1;
  for (int k = m - 1; k > 1; k -= 2) {
    count *= static_cast<std::uint64_t>(k);
    if (count > cap) throw CapacityError("perfect matchings of " + std::to_string(m) + " points",
                                         "> " + std::to_string(cap), cap);
  }
  std::vector<Matching> out;
  out.reserve(count);
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  Matching current{m, {}};
  matchings_rec(used, current, out);
  return out;
}

int matching_output_bits(int m) { return std::max(1, ceil_lg(m)); }

Symbol matching_bob_symbol(int m, std::size_t pair_index, Symbol b) {
  return static_cast<Symbol>(pair_index << matching_output_bits(m)) | b;
}

const std::vector<Matching>& matching_inputs(const Game& matching_game) {
  static std::mutex mutex;
  static std::map<int, std::vector<Matching>> cache;
  const int m = static_cast<int>(matching_game.params().at("m"));
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, enumerate_matchings(m)).first;
  return it->second;
}

GameBundle build_matching_game(int m) {
  require(m >= 2 && m % 2 == 0, "matching game needs an even m >= 2");
  require(m <= 16, "matching game supports m <= 16");
  const int k = matching_output_bits(m);
  auto matchings = std::make_shared<const std::vector<Matching>>(enumerate_matchings(m));

  std::vector<std::string> matching_labels;
  for (const auto& mt : *matchings) {
    std::ostringstream s;
    for (std::size_t i = 0; i < mt.pairs.size(); ++i)
      s << (i ? "|" : "") << mt.pairs[i].first << "-" << mt.pairs[i].second;
    matching_labels.push_back(s.str());
  }
  std::vector<Alphabet> inputs{Alphabet::bit_strings_lsb_first(m),
                               Alphabet::labelled(std::move(matching_labels))};
  const std::size_t pairs = static_cast<std::size_t>(m / 2);
  std::vector<Alphabet> outputs{
      Alphabet::bit_strings_msb_first(k),
      Alphabet(pairs << k, [k](Symbol s) {
        std::string bits;
        for (int j = k - 1; j >= 0; --j) bits += ((s >> j) & 1) ? '1' : '0';
        return "pair" + std::to_string(s >> k) + ":" + bits;
      })};

  auto promise = [](std::span<const Symbol>) { return true; };
  auto winning = [matchings, k](std::span<const Symbol> q, std::span<const Symbol> a) {
    const auto& mt = (*matchings)[static_cast<std::size_t>(q[1])];
    const auto pair_index = static_cast<std::size_t>(a[1] >> k);
    if (pair_index >= mt.pairs.size()) return false;
    const auto [alpha, beta] = mt.pairs[pair_index];
    const Symbol b = a[1] & ((1 << k) - 1);
    const int lhs = ((q[0] >> alpha) ^ (q[0] >> beta)) & 1;
    const int rhs = std::popcount(static_cast<unsigned>((alpha ^ beta) & (a[0] ^ b))) & 1;
    return lhs == rhs;
  };
  Game game("matching", {{"m", m}}, std::move(inputs), std::move(outputs), promise, winning);

  const std::size_t dim = std::size_t{1} << k;
  auto programs = [matchings, m, k, dim](std::size_t player, Symbol x) {
    if (player == 0) {
      std::vector<Complex> diag(dim, 1.0);
      for (int j = 0; j < m; ++j)
        if ((x >> j) & 1) diag[static_cast<std::size_t>(j)] = -1.0;
      return LocalProgram{Unitary::diagonal(diag), Unitary::walsh_hadamard(k),
                          ComputationalMeasurement{}};
    }
    const auto& mt = (*matchings)[static_cast<std::size_t>(x)];
    std::vector<std::vector<std::size_t>> blocks;
    for (auto [lo, hi] : mt.pairs)
      blocks.push_back({static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)});
    // Basis states beyond m - 1 carry no amplitude; they form one extra block.
    std::vector<std::size_t> unused;
    for (std::size_t j = static_cast<std::size_t>(m); j < dim; ++j) unused.push_back(j);
    if (!unused.empty()) blocks.push_back(std::move(unused));
    return LocalProgram{SubspaceMeasurement{SubspacePartition(dim, std::move(blocks))},
                        Unitary::walsh_hadamard(k), ComputationalMeasurement{}};
  };
  auto post = [m, k](std::size_t player, Symbol, const RawOutcome& raw) -> Symbol {
    if (player == 0) return static_cast<Symbol>(raw.at(0));
    if (raw.at(0) >= static_cast<std::size_t>(m / 2))
      throw ValidationError("matching strategy collapsed onto an unused subspace");
    return matching_bob_symbol(m, raw.at(0), static_cast<Symbol>(raw.at(1)));
  };
  QuantumStrategy strategy(RegisterLayout::qubits(2, k), quantum::UniformDiagonal{m}, programs,
                           post,
                           "(1/sqrt m) sum |j>|j>; Alice phase (-1)^{x_j}; Bob projects onto "
                           "span{|alpha>,|beta>}; both Walsh-Hadamard and measure");
  return {std::move(game), std::move(strategy)};
}

// --------------------------------------------------------------------------
// Impossible colouring

std::vector<std::vector<int>> colouring_alice_inputs(const ks::KSSet& set) {
  std::vector<std::vector<int>> inputs;
  for (auto [i, j] : set.orthogonal_pairs()) inputs.push_back({i, j});
  for (auto& c : set.full_contexts()) inputs.push_back(c);
  return inputs;
}

GameBundle build_colouring_game(const ks::KSSet& set, bool verify_set) {
  if (verify_set && !ks::verify_ks_property(set).has_ks_property())
    throw ValidationError("KS set " + set.name() + " is colourable; refusing to build the game");
  const int d = set.dimension();
  auto alice_inputs =
      std::make_shared<const std::vector<std::vector<int>>>(colouring_alice_inputs(set));

  std::vector<std::string> labels;
  for (const auto& t : *alice_inputs) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    labels.push_back(s + "}");
  }
  const auto alice_outputs = static_cast<std::size_t>(std::max(3, d));
  std::vector<Alphabet> inputs{Alphabet::labelled(std::move(labels)), Alphabet::numeric(set.size())};
  std::vector<Alphabet> outputs{Alphabet::numeric(alice_outputs), Alphabet::numeric(2)};

  auto position = [alice_inputs](Symbol tuple, Symbol v) {
    const auto& t = (*alice_inputs)[static_cast<std::size_t>(tuple)];
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] == v) return static_cast<int>(i);
    return -1;
  };
  auto promise = [position](std::span<const Symbol> q) { return position(q[0], q[1]) >= 0; };
  // Alice's output names the member she colours 1 (or "neither" for a pair),
  // so her own constraints hold by construction; only agreement is scored.
  auto winning = [alice_inputs, position](std::span<const Symbol> q, std::span<const Symbol> a) {
    const auto& t = (*alice_inputs)[static_cast<std::size_t>(q[0])];
    const int pos = position(q[0], q[1]);
    if (t.size() == 2 && a[0] > kColouringNeither) return false;
    if (t.size() != 2 && a[0] >= static_cast<Symbol>(t.size())) return false;
    const int alice_colour = a[0] == pos ? 1 : 0;
    return alice_colour == a[1];
  };
  Game game("colouring", {{"d", d}, {"vectors", static_cast<std::int64_t>(set.size())}},
            std::move(inputs), std::move(outputs), promise, winning);

  auto units = std::make_shared<std::vector<std::vector<double>>>();
  for (std::size_t i = 0; i < set.size(); ++i) units->push_back(set.unit_vector(i));
  auto programs = [alice_inputs, units, d](std::size_t player, Symbol x) {
    std::vector<std::vector<double>> given;
    if (player == 0) {
      for (int v : (*alice_inputs)[static_cast<std::size_t>(x)])
        given.push_back((*units)[static_cast<std::size_t>(v)]);
    } else {
      given.push_back((*units)[static_cast<std::size_t>(x)]);
    }
    const auto basis = quantum::gram_schmidt_complete(given, static_cast<std::size_t>(d));
    return LocalProgram{Unitary::from_real_rows(basis), ComputationalMeasurement{}};
  };
  auto post = [alice_inputs](std::size_t player, Symbol x, const RawOutcome& raw) -> Symbol {
    const auto k = static_cast<Symbol>(raw.at(0));
    if (player == 1) return k == 0 ? 1 : 0;
    const auto size = (*alice_inputs)[static_cast<std::size_t>(x)].size();
    if (size == 2) return k < 2 ? k : kColouringNeither;
    return k;
  };
  QuantumStrategy strategy(RegisterLayout::uniform(2, d), quantum::UniformDiagonal{d}, programs,
                           post,
                           "(1/sqrt d) sum |j>|j>; each player measures in a real basis "
                           "completed from its vectors");
  return {std::move(game), std::move(strategy)};
}

// --------------------------------------------------------------------------
// Boyer modulo-M

GameBundle build_boyer_game(int n, int modulus) {
  require(n >= 3 && n <= 8, "Boyer game needs 3 <= n <= 8");
  require(modulus >= 2 && modulus % 2 == 0 && modulus <= 64, "Boyer game needs an even 2 <= M <= 64");
  const Symbol input_size = 2 * modulus;

  std::vector<Alphabet> inputs(static_cast<std::size_t>(n),
                               Alphabet::numeric(static_cast<std::size_t>(input_size)));
  std::vector<Alphabet> outputs(static_cast<std::size_t>(n),
                                Alphabet::numeric(static_cast<std::size_t>(modulus)));
  auto promise = [](std::span<const Symbol> q) {
    return std::accumulate(q.begin(), q.end(), 0) % 2 == 0;
  };
  auto winning = [modulus](std::span<const Symbol> q, std::span<const Symbol> a) {
    const int half_sum = std::accumulate(q.begin(), q.end(), 0) / 2;
    return std::accumulate(a.begin(), a.end(), 0) % modulus == half_sum % modulus;
  };
  Game game("boyer", {{"n", n}, {"M", modulus}}, std::move(inputs), std::move(outputs), promise,
            winning);

  const bool power_of_two = std::has_single_bit(static_cast<unsigned>(modulus));
  RegisterLayout layout = power_of_two
                              ? RegisterLayout::qubits(static_cast<std::size_t>(n),
                                                       std::countr_zero(static_cast<unsigned>(modulus)))
                              : RegisterLayout::uniform(static_cast<std::size_t>(n), modulus);
  auto programs = [modulus](std::size_t, Symbol x) {
    std::vector<Complex> diag(static_cast<std::size_t>(modulus));
    for (int j = 0; j < modulus; ++j) {
      // e^{-i pi j x / M}; j x reduced mod 2M keeps the angle exact.
      const int r = (j * x) % (2 * modulus);
      diag[static_cast<std::size_t>(j)] = std::polar(1.0, -std::numbers::pi * r / modulus);
    }
    return LocalProgram{Unitary::diagonal(diag), Unitary::fourier(static_cast<std::size_t>(modulus)),
                        ComputationalMeasurement{}};
  };
  auto post = [](std::size_t, Symbol, const RawOutcome& raw) { return static_cast<Symbol>(raw.at(0)); };
  QuantumStrategy strategy(std::move(layout), quantum::UniformDiagonal{modulus}, programs, post,
                           "(1/sqrt M) sum |j>^n; phase e^{-i pi j x_i/M}, Fourier mod M, measure");
  return {std::move(game), std::move(strategy)};
}

Game build_random_game(std::uint64_t seed, const RandomGameShape& shape) {
  require(shape.min_players >= 2 && shape.min_players <= shape.max_players, "bad player range");
  require(shape.min_alphabet >= 1 && shape.min_alphabet <= shape.max_alphabet, "bad alphabet range");
  std::mt19937_64 rng(seed);
  auto between = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = between(shape.min_players, shape.max_players);
  std::vector<std::size_t> in_sizes, out_sizes;
  std::vector<Alphabet> inputs, outputs;
  for (int i = 0; i < n; ++i) {
    in_sizes.push_back(static_cast<std::size_t>(between(shape.min_alphabet, shape.max_alphabet)));
    out_sizes.push_back(static_cast<std::size_t>(between(shape.min_alphabet, shape.max_alphabet)));
    inputs.push_back(Alphabet::numeric(in_sizes.back()));
    outputs.push_back(Alphabet::numeric(out_sizes.back()));
  }
  std::size_t questions = 1, answers = 1;
  for (int i = 0; i < n; ++i) {
    questions *= in_sizes[static_cast<std::size_t>(i)];
    answers *= out_sizes[static_cast<std::size_t>(i)];
  }
  std::bernoulli_distribution legit(shape.promise_density), win(shape.win_density);
  auto promise = std::make_shared<std::vector<char>>(questions);
  auto table = std::make_shared<std::vector<char>>(questions * answers);
  for (auto& v : *promise) v = legit(rng);
  if (std::none_of(promise->begin(), promise->end(), [](char v) { return v != 0; }))
    (*promise)[static_cast<std::size_t>(rng() % questions)] = 1;
  for (auto& v : *table) v = win(rng);

  auto index = [](std::span<const Symbol> xs, const std::vector<std::size_t>& sizes) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) k = k * sizes[i] + static_cast<std::size_t>(xs[i]);
    return k;
  };
  Game::Promise p = [promise, in_sizes, index](std::span<const Symbol> q) {
    return (*promise)[index(q, in_sizes)] != 0;
  };
  Game::Winning w = [table, in_sizes, out_sizes, answers, index](std::span<const Symbol> q,
                                                                 std::span<const Symbol> a) {
    return (*table)[index(q, in_sizes) * answers + index(a, out_sizes)] != 0;
  };
  return Game("random", {{"seed", static_cast<std::int64_t>(seed)}, {"players", n}}, std::move(inputs),
              std::move(outputs), std::move(p), std::move(w));
}

}  // namespace ptlab::catalog
