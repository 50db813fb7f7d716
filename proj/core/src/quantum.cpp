#include "ptlab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ptlab/errors.hpp"

namespace ptlab::quantum {

RegisterLayout::RegisterLayout(std::vector<std::vector<int>> qudit_dims)
    : dims_(std::move(qudit_dims)) {
  if (dims_.empty()) throw InputError("register layout needs at least one player");
  player_dim_.resize(dims_.size());
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    if (dims_[p].empty()) throw InputError("player " + std::to_string(p) + " holds no qudits");
    std::size_t d = 1;
    for (int q : dims_[p]) {
      if (q < 2) throw InputError("qudit dimensions must be at least 2");
      d *= static_cast<std::size_t>(q);
    }
    player_dim_[p] = d;
  }
  stride_.assign(dims_.size(), 1);
  for (std::size_t p = dims_.size() - 1; p-- > 0;) stride_[p] = stride_[p + 1] * player_dim_[p + 1];
  total_ = stride_[0] * player_dim_[0];
}

RegisterLayout RegisterLayout::uniform(std::size_t players, int dim) {
  return RegisterLayout(std::vector<std::vector<int>>(players, std::vector<int>{dim}));
}

RegisterLayout RegisterLayout::qubits(std::size_t players, int qubits) {
  return RegisterLayout(
      std::vector<std::vector<int>>(players, std::vector<int>(static_cast<std::size_t>(qubits), 2)));
}

bool RegisterLayout::is_qubit_register(std::size_t player) const {
  const auto& q = dims_.at(player);
  return std::all_of(q.begin(), q.end(), [](int d) { return d == 2; });
}

// ---------------------------------------------------------------------------

Unitary::Unitary(std::size_t dim, std::vector<Complex> entries, Unchecked)
    : dim_(dim), entries_(std::move(entries)) {}

Unitary::Unitary(std::size_t dim, std::vector<Complex> entries, double tolerance)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0 || entries_.size() != dim_ * dim_)
    throw InputError("unitary needs dim*dim entries");
  const double defect = unitarity_defect();
  if (!(defect <= tolerance))
    throw ValidationError("matrix is not unitary (max |UU^dagger - I| = " +
                          std::to_string(defect) + ")");
}

Unitary Unitary::identity(std::size_t dim) {
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return Unitary(dim, std::move(e), Unchecked{});
}

Unitary Unitary::diagonal(std::span<const Complex> phases) {
  const std::size_t dim = phases.size();
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = phases[i];
  return Unitary(dim, std::move(e));
}

Unitary Unitary::walsh_hadamard(int qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  const double scale = std::pow(2.0, -0.5 * qubits);
  std::vector<Complex> e(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      e[r * dim + c] = (std::popcount(r & c) % 2 ? -scale : scale);
  return Unitary(dim, std::move(e), Unchecked{});
}

Unitary Unitary::fourier(std::size_t modulus) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(modulus));
  std::vector<Complex> e(modulus * modulus);
  for (std::size_t k = 0; k < modulus; ++k)
    for (std::size_t j = 0; j < modulus; ++j) {
      // Reduce jk first so the angle stays exact for large products.
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>((j * k) % modulus) / static_cast<double>(modulus);
      e[k * modulus + j] = std::polar(scale, angle);
    }
  return Unitary(modulus, std::move(e));
}

Unitary Unitary::from_real_rows(std::span<const std::vector<double>> basis) {
  const std::size_t dim = basis.size();
  std::vector<Complex> e(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (basis[r].size() != dim) throw InputError("basis vector has the wrong dimension");
    for (std::size_t c = 0; c < dim; ++c) e[r * dim + c] = basis[r][c];
  }
  return Unitary(dim, std::move(e));
}

Unitary Unitary::operator*(const Unitary& rhs) const {
  if (rhs.dim_ != dim_) throw InputError("unitary dimensions differ");
  std::vector<Complex> e(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = entries_[r * dim_ + k];
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) e[r * dim_ + c] += a * rhs.entries_[k * dim_ + c];
    }
  return Unitary(dim_, std::move(e), Unchecked{});
}

double Unitary::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) {
      Complex sum{};
      for (std::size_t k = 0; k < dim_; ++k)
        sum += entries_[r * dim_ + k] * std::conj(entries_[c * dim_ + k]);
      if (r == c) sum -= 1.0;
      worst = std::max(worst, std::abs(sum));
    }
  return worst;
}

// ---------------------------------------------------------------------------

PureState::PureState(RegisterLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.total_dimension())
    throw InputError("state has " + std::to_string(amplitudes_.size()) +
                     " amplitudes but the layout has dimension " +
                     std::to_string(layout_.total_dimension()));
  const double n = norm_squared();
  if (!(std::abs(n - 1.0) <= kNormTolerance))
    throw ValidationError("state is not normalized (norm^2 = " + std::to_string(n) + ")");
}

double PureState::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

PureState make_state(const RegisterLayout& layout, const StateDescriptor& descriptor) {
  std::vector<Complex> amps(layout.total_dimension());
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, UniformDiagonal>) {
          if (d.terms < 1) throw InputError("uniform-diagonal state needs at least one term");
          for (std::size_t p = 0; p < layout.players(); ++p)
            if (layout.player_dimension(p) < static_cast<std::size_t>(d.terms))
              throw InputError("player " + std::to_string(p) + " register is too small for " +
                               std::to_string(d.terms) + " diagonal terms");
          const double a = 1.0 / std::sqrt(static_cast<double>(d.terms));
          for (int j = 0; j < d.terms; ++j) {
            std::size_t index = 0;
            for (std::size_t p = 0; p < layout.players(); ++p)
              index += static_cast<std::size_t>(j) * layout.stride(p);
            amps[index] = a;
          }
        } else if constexpr (std::is_same_v<T, MagicSquarePair>) {
          if (!(layout == RegisterLayout::qubits(2, 2)))
            throw InputError("the magic-square state needs two qubits per player, two players");
          amps[0b0011] = 0.5;
          amps[0b0110] = -0.5;
          amps[0b1001] = -0.5;
          amps[0b1100] = 0.5;
        } else {
          if (d.index >= amps.size()) throw InputError("basis index out of range");
          amps[d.index] = 1.0;
        }
      },
      descriptor);
  return PureState(layout, std::move(amps));
}

PureState apply_local(const PureState& state, std::size_t player, const Unitary& u) {
  const auto& layout = state.layout();
  if (player >= layout.players()) throw InputError("no such player");
  const std::size_t dim = layout.player_dimension(player);
  if (u.dim() != dim)
    throw InputError("unitary of dimension " + std::to_string(u.dim()) +
                     " does not match register dimension " + std::to_string(dim));
  const std::size_t stride = layout.stride(player);
  const std::size_t block = dim * stride;
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  for (std::size_t base = 0; base < in.size(); base += block)
    for (std::size_t s = 0; s < stride; ++s)
      for (std::size_t r = 0; r < dim; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < dim; ++c) acc += u(r, c) * in[base + c * stride + s];
        out[base + r * stride + s] = acc;
      }
  return PureState(layout, std::move(out));
}

namespace {

// Squared norm of the projection onto each value of `key(local index)`.
template <class Key>
std::vector<double> marginal(const PureState& state, std::size_t player, std::size_t outcomes,
                             Key key) {
  std::vector<double> probs(outcomes, 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t g = 0; g < amps.size(); ++g)
    probs[key(state.layout().local_index(g, player))] += std::norm(amps[g]);
  return probs;
}

template <class Keep>
PureState project(const PureState& state, std::size_t player, double probability, Keep keep) {
  const auto amps = state.amplitudes();
  std::vector<Complex> out(amps.size());
  const double scale = 1.0 / std::sqrt(probability);
  for (std::size_t g = 0; g < amps.size(); ++g)
    if (keep(state.layout().local_index(g, player))) out[g] = amps[g] * scale;
  // Renormalize once more in floating point so the invariant holds tightly.
  double n = 0.0;
  for (const auto& a : out) n += std::norm(a);
  const double fix = 1.0 / std::sqrt(n);
  for (auto& a : out) a *= fix;
  return PureState(state.layout(), std::move(out));
}

std::size_t sample_index(std::span<const double> probs, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double total = 0.0;
  for (double p : probs) total += p;
  const double u = unit(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace

ComputationalResult measure_computational(const PureState& state, std::size_t player, Rng& rng) {
  if (player >= state.layout().players()) throw InputError("no such player");
  const std::size_t dim = state.layout().player_dimension(player);
  const auto probs = marginal(state, player, dim, [](std::size_t r) { return r; });
  const std::size_t k = sample_index(probs, rng);
  return {k, project(state, player, probs[k], [k](std::size_t r) { return r == k; })};
}

SubspacePartition::SubspacePartition(std::size_t register_dim,
                                     std::vector<std::vector<std::size_t>> blocks)
    : dim_(register_dim), blocks_(std::move(blocks)), block_of_(register_dim, register_dim) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw InputError("subspace partition has an empty block");
    for (std::size_t idx : blocks_[b]) {
      if (idx >= dim_) throw InputError("subspace block index out of range");
      if (block_of_[idx] != dim_) throw InputError("subspace blocks overlap");
      block_of_[idx] = b;
    }
  }
  if (std::find(block_of_.begin(), block_of_.end(), dim_) != block_of_.end())
    throw InputError("subspace blocks do not cover the register basis");
}

SubspaceResult measure_subspaces(const PureState& state, std::size_t player,
                                 const SubspacePartition& partition, Rng& rng) {
  if (player >= state.layout().players()) throw InputError("no such player");
  if (partition.register_dimension() != state.layout().player_dimension(player))
    throw InputError("partition does not match the register dimension");
  const auto probs = marginal(state, player, partition.blocks().size(),
                              [&](std::size_t r) { return partition.block_of(r); });
  const std::size_t b = sample_index(probs, rng);
  return {b, project(state, player, probs[b],
                     [&](std::size_t r) { return partition.block_of(r) == b; })};
}

std::vector<Branch> computational_branches(const PureState& state, std::size_t player,
                                           double cutoff) {
  const std::size_t dim = state.layout().player_dimension(player);
  const auto probs = marginal(state, player, dim, [](std::size_t r) { return r; });
  std::vector<Branch> out;
  for (std::size_t k = 0; k < dim; ++k)
    if (probs[k] > cutoff)
      out.push_back({k, probs[k], project(state, player, probs[k], [k](std::size_t r) { return r == k; })});
  return out;
}

std::vector<Branch> subspace_branches(const PureState& state, std::size_t player,
                                      const SubspacePartition& partition, double cutoff) {
  if (partition.register_dimension() != state.layout().player_dimension(player))
    throw InputError("partition does not match the register dimension");
  const auto probs = marginal(state, player, partition.blocks().size(),
                              [&](std::size_t r) { return partition.block_of(r); });
  std::vector<Branch> out;
  for (std::size_t b = 0; b < probs.size(); ++b)
    if (probs[b] > cutoff)
      out.push_back({b, probs[b], project(state, player, probs[b], [&](std::size_t r) {
                       return partition.block_of(r) == b;
                     })});
  return out;
}

RawOutcome run_program(PureState& state, std::size_t player, const LocalProgram& program,
                       Rng& rng) {
  RawOutcome raw;
  for (const auto& step : program) {
    if (const auto* u = std::get_if<Unitary>(&step)) {
      state = apply_local(state, player, *u);
    } else if (std::holds_alternative<ComputationalMeasurement>(step)) {
      auto r = measure_computational(state, player, rng);
      raw.push_back(r.outcome);
      state = std::move(r.collapsed);
    } else {
      auto r = measure_subspaces(state, player, std::get<SubspaceMeasurement>(step).partition, rng);
      raw.push_back(r.block);
      state = std::move(r.collapsed);
    }
  }
  return raw;
}

namespace {

void expand(const PureState& state, std::span<const LocalProgram> programs, std::size_t player,
            std::size_t step, double weight, JointOutcome& transcript,
            std::map<JointOutcome, double>& out) {
  if (player == programs.size()) {
    out[transcript] += weight;
    return;
  }
  const auto& program = programs[player];
  if (step == program.size()) {
    expand(state, programs, player + 1, 0, weight, transcript, out);
    return;
  }
  const auto& s = program[step];
  if (const auto* u = std::get_if<Unitary>(&s)) {
    expand(apply_local(state, player, *u), programs, player, step + 1, weight, transcript, out);
    return;
  }
  const auto branches =
      std::holds_alternative<ComputationalMeasurement>(s)
          ? computational_branches(state, player)
          : subspace_branches(state, player, std::get<SubspaceMeasurement>(s).partition);
  for (const auto& b : branches) {
    transcript[player].push_back(b.outcome);
    expand(b.collapsed, programs, player, step + 1, weight * b.probability, transcript, out);
    transcript[player].pop_back();
  }
}

}  // namespace

std::map<JointOutcome, double> exact_outcome_distribution(const PureState& state,
                                                          std::span<const LocalProgram> programs) {
  if (programs.size() != state.layout().players())
    throw InputError("a measurement plan is required for every player");
  std::map<JointOutcome, double> out;
  JointOutcome transcript(programs.size());
  expand(state, programs, 0, 0, 1.0, transcript, out);
  for (auto it = out.begin(); it != out.end();)
    it = it->second < 1e-15 ? out.erase(it) : std::next(it);
  return out;
}

std::vector<std::vector<double>> gram_schmidt_complete(std::span<const std::vector<double>> vectors,
                                                       std::size_t dim) {
  if (vectors.size() > dim) throw ValidationError("more vectors than the dimension");
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  std::vector<std::vector<double>> basis;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw ValidationError("vector has the wrong dimension");
    const double n = std::sqrt(dot(v, v));
    if (n == 0.0) throw ValidationError("zero vector cannot be part of a basis");
    std::vector<double> unit(v);
    for (double& x : unit) x /= n;
    for (const auto& b : basis)
      if (std::abs(dot(b, unit)) > kOrthogonalityTolerance)
        throw ValidationError("input vectors are not mutually orthogonal");
    basis.push_back(std::move(unit));
  }
  for (std::size_t e = 0; e < dim && basis.size() < dim; ++e) {
    std::vector<double> candidate(dim, 0.0);
    candidate[e] = 1.0;
    // Two passes of modified Gram-Schmidt keep the result orthogonal to ~1e-16.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double c = dot(b, candidate);
        for (std::size_t i = 0; i < dim; ++i) candidate[i] -= c * b[i];
      }
    const double n = std::sqrt(dot(candidate, candidate));
    if (n < 1e-8) continue;
    for (double& x : candidate) x /= n;
    basis.push_back(std::move(candidate));
  }
  return basis;
}

}  // namespace ptlab::quantum
