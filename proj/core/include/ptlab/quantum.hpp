#pragma once

// Dense state-vector simulation over per-player qudit registers.
//
// Basis indexing: the global index is a mixed-radix number with player 0 most
// significant; inside a player's register the first qudit is most
// significant. So for two players holding two qubits each, |abcd> has index
// 8a + 4b + 2c + d, with ab on player 0.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace ptlab::quantum {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kOrthogonalityTolerance = 1e-10;

class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<std::vector<int>> qudit_dims);

  /// n players holding one qudit of dimension `dim` each.
  static RegisterLayout uniform(std::size_t players, int dim);
  /// n players holding `qubits` qubits each.
  static RegisterLayout qubits(std::size_t players, int qubits);

  std::size_t players() const noexcept { return dims_.size(); }
  std::span<const int> qudits(std::size_t player) const { return dims_.at(player); }
  std::size_t player_dimension(std::size_t player) const { return player_dim_.at(player); }
  std::size_t total_dimension() const noexcept { return total_; }
  /// Product of the register dimensions of players after `player`.
  std::size_t stride(std::size_t player) const { return stride_.at(player); }
  bool is_qubit_register(std::size_t player) const;

  /// Register index of `player` inside a global basis index.
  std::size_t local_index(std::size_t global, std::size_t player) const {
    return (global / stride_[player]) % player_dim_[player];
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<std::vector<int>> dims_;
  std::vector<std::size_t> player_dim_;
  std::vector<std::size_t> stride_;
  std::size_t total_ = 1;
};

/// Square matrix checked for unitarity at construction.
class Unitary {
 public:
  /// Row-major entries; throws ValidationError unless U U^dagger = I within
  /// `tolerance` entrywise.
  Unitary(std::size_t dim, std::vector<Complex> entries, double tolerance = kUnitaryTolerance);

  static Unitary identity(std::size_t dim);
  static Unitary diagonal(std::span<const Complex> phases);
  /// Walsh-Hadamard transform on `qubits` qubits.
  static Unitary walsh_hadamard(int qubits);
  /// Quantum Fourier transform modulo `modulus`: |j> -> M^-1/2 sum_k e^{2 pi i jk/M} |k>.
  static Unitary fourier(std::size_t modulus);
  /// Change of basis whose row k is the (real, orthonormal) vector `basis[k]`;
  /// measuring after it in the computational basis measures in `basis`.
  static Unitary from_real_rows(std::span<const std::vector<double>> basis);

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Unitary operator*(const Unitary& rhs) const;
  /// Largest entrywise deviation of U U^dagger from the identity.
  double unitarity_defect() const;

 private:
  struct Unchecked {};
  Unitary(std::size_t dim, std::vector<Complex> entries, Unchecked);

  std::size_t dim_;
  std::vector<Complex> entries_;
};

class PureState {
 public:
  /// Throws ValidationError unless the amplitudes have unit norm within
  /// kNormTolerance and match the layout's total dimension.
  PureState(RegisterLayout layout, std::vector<Complex> amplitudes);

  const RegisterLayout& layout() const noexcept { return layout_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& amplitude(std::size_t index) const { return amplitudes_.at(index); }
  double norm_squared() const noexcept;

 private:
  RegisterLayout layout_;
  std::vector<Complex> amplitudes_;
};

/// (1/sqrt(d)) sum_{j<d} |j>|j>...|j> over every player's register.
struct UniformDiagonal {
  int terms;
};
/// (1/2)(|0011> - |0110> - |1001> + |1100>), two qubits per player.
struct MagicSquarePair {};
/// A computational basis state given by its global index.
struct BasisState {
  std::size_t index;
};
using StateDescriptor = std::variant<UniformDiagonal, MagicSquarePair, BasisState>;

/// GHZ is UniformDiagonal{2} over single-qubit registers.
inline StateDescriptor ghz() { return UniformDiagonal{2}; }

PureState make_state(const RegisterLayout& layout, const StateDescriptor& descriptor);

PureState apply_local(const PureState& state, std::size_t player, const Unitary& u);

struct ComputationalResult {
  std::size_t outcome;  ///< register index of the measured player
  PureState collapsed;
};
ComputationalResult measure_computational(const PureState& state, std::size_t player, Rng& rng);

/// Disjoint blocks of basis indices covering one register.
class SubspacePartition {
 public:
  SubspacePartition(std::size_t register_dim, std::vector<std::vector<std::size_t>> blocks);

  std::size_t register_dimension() const noexcept { return dim_; }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t index) const { return block_of_.at(index); }

 private:
  std::size_t dim_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

struct SubspaceResult {
  std::size_t block;
  PureState collapsed;
};
SubspaceResult measure_subspaces(const PureState& state, std::size_t player,
                                 const SubspacePartition& partition, Rng& rng);

/// One possible measurement result with its probability and the renormalized
/// post-measurement state.
struct Branch {
  std::size_t outcome;
  double probability;
  PureState collapsed;
};
/// Every outcome with probability above `cutoff`, in increasing outcome order.
std::vector<Branch> computational_branches(const PureState& state, std::size_t player,
                                           double cutoff = 1e-15);
std::vector<Branch> subspace_branches(const PureState& state, std::size_t player,
                                      const SubspacePartition& partition, double cutoff = 1e-15);

struct ComputationalMeasurement {};
struct SubspaceMeasurement {
  SubspacePartition partition;
};
using Step = std::variant<Unitary, ComputationalMeasurement, SubspaceMeasurement>;
/// What one player does to its own register after reading its input.
using LocalProgram = std::vector<Step>;

/// One entry per measurement step of a player's program, in program order.
using RawOutcome = std::vector<std::size_t>;
using JointOutcome = std::vector<RawOutcome>;

/// Runs `program` for `player` against `state`, sampling each measurement.
RawOutcome run_program(PureState& state, std::size_t player, const LocalProgram& program,
                       Rng& rng);

/// Exact distribution of the joint raw transcript when each player runs its
/// program. Probabilities below 1e-15 are dropped; the rest sum to 1.
std::map<JointOutcome, double> exact_outcome_distribution(
    const PureState& state, std::span<const LocalProgram> programs);

/// Extends mutually orthogonal real vectors to an orthonormal basis of R^d.
/// Inputs come first (normalized, same order); completion sweeps the standard
/// basis e_0, e_1, ... in index order. Throws ValidationError for zero,
/// non-orthogonal (within 1e-10 relative) or too many vectors.
std::vector<std::vector<double>> gram_schmidt_complete(std::span<const std::vector<double>> vectors,
                                                       std::size_t dim);

}  // namespace ptlab::quantum
