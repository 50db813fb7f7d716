#pragma once

// The game families and their quantum winning strategies.

#include <cstdint>
#include <utility>
#include <vector>

#include "ptlab/game.hpp"
#include "ptlab/ks_set.hpp"
#include "ptlab/strategy.hpp"

namespace ptlab::catalog {

struct GameBundle {
  Game game;
  QuantumStrategy strategy;
};

/// n players, l-bit inputs x_i with sum divisible by 2^l; one-bit outputs
/// whose parity must equal (sum x_i / 2^l) mod 2. Quantum side: GHZ state,
/// phase e^{i pi x_i / 2^l} on |1>, Hadamard, measure.
GameBundle build_parity_game(int n, int l);
/// n = 3, l = 1.
GameBundle build_mermin_ghz();
/// l = ceil(lg n) - 1 (at least 1).
GameBundle build_extended_parity(int n);
int extended_parity_input_bits(int n);

/// Inputs are 2^m-bit strings (bit j of the symbol is x_j), promised equal or
/// at Hamming distance 2^(m-1); m-bit outputs must agree iff the inputs do.
GameBundle build_dj_game(int m);

/// Alice gets row x, Bob column y (symbols 0..2, shown 1..3); each outputs
/// three bits, most significant first. Rows even, columns odd, and the
/// shared cell must agree.
GameBundle build_magic_square_game();

struct Matching {
  int m = 0;
  std::vector<std::pair<int, int>> pairs;  ///< each pair (lo, hi), sorted by lo
  friend bool operator==(const Matching&, const Matching&) = default;
};

/// All (m-1)!! perfect matchings of {0..m-1}: the smallest free element is
/// paired with each larger free element in increasing order.
std::vector<Matching> enumerate_matchings(int m, std::uint64_t cap = kDefaultEnumerationCap);

/// Number of output bits ceil(lg m) used by both players.
int matching_output_bits(int m);
/// Bob's output symbol for pair `pair_index` of his matching and bit string b.
Symbol matching_bob_symbol(int m, std::size_t pair_index, Symbol b);

/// Alice gets an m-bit string, Bob a perfect matching; Alice outputs a, Bob
/// a pair {alpha, beta} of his matching and b, with
/// x_alpha xor x_beta = (alpha xor beta) . (a xor b).
GameBundle build_matching_game(int m);
const std::vector<Matching>& matching_inputs(const Game& matching_game);

/// Alice inputs of the colouring game: every orthogonal pair of the set,
/// then every full context, in that order.
std::vector<std::vector<int>> colouring_alice_inputs(const ks::KSSet& set);
/// Alice's output for "neither vector coloured 1" when she holds a pair.
inline constexpr Symbol kColouringNeither = 2;

/// Alice gets an orthogonal pair or a full context, Bob one vector that the
/// promise puts among Alice's; they must agree on that vector's colour.
GameBundle build_colouring_game(const ks::KSSet& set, bool verify_set = true);

/// n players, inputs reduced mod 2M, promise sum x_i even; outputs in Z_M
/// with sum a_i = (sum x_i)/2 mod M. Quantum side: (1/sqrt M) sum_j |j..j>,
/// phase e^{-i pi j x_i / M}, Fourier transform mod M, measure.
GameBundle build_boyer_game(int n, int modulus);

struct RandomGameShape {
  int min_players = 2, max_players = 3;
  int min_alphabet = 2, max_alphabet = 3;
  double promise_density = 0.75;  ///< chance a question is legitimate
  double win_density = 0.5;       ///< chance a (question, answer) pair is appropriate
};

/// A small game with random promise and winning relation, reproducible from
/// `seed`. At least one question is legitimate. No quantum strategy.
Game build_random_game(std::uint64_t seed, const RandomGameShape& shape = {});

}  // namespace ptlab::catalog
