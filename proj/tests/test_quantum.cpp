#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ptlab/errors.hpp"
#include "ptlab/quantum.hpp"

using namespace ptlab;
using namespace ptlab::quantum;

namespace {

constexpr double kTol = 1e-12;

PureState ghz_state(std::size_t n) { return make_state(RegisterLayout::qubits(n, 1), ghz()); }

double total(const std::map<JointOutcome, double>& dist) {
  double s = 0;
  for (const auto& [k, v] : dist) s += v;
  return s;
}

}  // namespace

TEST(RegisterLayout, MixedRadixIndexing) {
  const RegisterLayout layout({{2, 2}, {3}});
  EXPECT_EQ(layout.total_dimension(), 12u);
  EXPECT_EQ(layout.player_dimension(0), 4u);
  EXPECT_EQ(layout.stride(0), 3u);
  EXPECT_EQ(layout.stride(1), 1u);
  EXPECT_EQ(layout.local_index(7, 0), 2u);
  EXPECT_EQ(layout.local_index(7, 1), 1u);
  EXPECT_TRUE(layout.is_qubit_register(0));
  EXPECT_FALSE(layout.is_qubit_register(1));
}

TEST(Unitary, RejectsNonUnitary) {
  EXPECT_THROW(Unitary(2, {1, 1, 0, 1}), ValidationError);
  EXPECT_THROW(Unitary(2, {1, 0, 0}), InputError);
  EXPECT_NO_THROW(Unitary(2, {0, 1, 1, 0}));
}

TEST(Unitary, FactoriesAreUnitary) {
  EXPECT_LT(Unitary::walsh_hadamard(3).unitarity_defect(), 1e-12);
  EXPECT_LT(Unitary::fourier(5).unitarity_defect(), 1e-12);
  const Complex phases[] = {1.0, std::polar(1.0, 0.3), std::polar(1.0, -2.0)};
  EXPECT_LT(Unitary::diagonal(phases).unitarity_defect(), 1e-12);
}

TEST(Unitary, FourierConvention) {
  const auto f = Unitary::fourier(4);
  // |1> -> (1/2) sum_k i^k |k>: entry (k, j=1) = i^k / 2.
  EXPECT_NEAR(std::abs(f(1, 1) - Complex(0, 0.5)), 0.0, kTol);
  EXPECT_NEAR(std::abs(f(2, 1) - Complex(-0.5, 0)), 0.0, kTol);
}

TEST(PureState, NormChecked) {
  const auto layout = RegisterLayout::qubits(2, 1);
  EXPECT_THROW(PureState(layout, {1, 1, 0, 0}), ValidationError);
  EXPECT_THROW(PureState(layout, {1, 0}), InputError);
  EXPECT_NO_THROW(PureState(layout, {0, 0, 0, 1}));
}

TEST(MakeState, GhzAmplitudes) {
  const auto s = ghz_state(3);
  EXPECT_NEAR(s.amplitude(0).real(), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(s.amplitude(7).real(), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(s.norm_squared(), 1.0, kTol);
}

TEST(MakeState, MagicSquarePair) {
  const auto s = make_state(RegisterLayout::qubits(2, 2), MagicSquarePair{});
  EXPECT_NEAR(s.amplitude(0b0011).real(), 0.5, kTol);
  EXPECT_NEAR(s.amplitude(0b0110).real(), -0.5, kTol);
  EXPECT_NEAR(s.amplitude(0b1001).real(), -0.5, kTol);
  EXPECT_NEAR(s.amplitude(0b1100).real(), 0.5, kTol);
}

TEST(ApplyLocal, ActsOnOnePlayerOnly) {
  const auto s = make_state(RegisterLayout::qubits(2, 1), BasisState{0});
  const auto h = apply_local(s, 1, Unitary::walsh_hadamard(1));
  EXPECT_NEAR(std::abs(h.amplitude(0)), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(std::abs(h.amplitude(1)), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(std::abs(h.amplitude(2)), 0.0, kTol);
  EXPECT_THROW(apply_local(s, 0, Unitary::walsh_hadamard(2)), InputError);
}

TEST(Measurement, GhzCollapseIsCorrelated) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = measure_computational(ghz_state(3), 0, rng);
    Rng rng2(trial);
    const auto r2 = measure_computational(r.collapsed, 2, rng2);
    EXPECT_EQ(r.outcome, r2.outcome);
  }
}

TEST(Measurement, BranchesSumToOne) {
  const auto branches = computational_branches(ghz_state(3), 1);
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_NEAR(branches[0].probability + branches[1].probability, 1.0, kTol);
  EXPECT_EQ(branches[0].outcome, 0u);
}

TEST(SubspacePartition, MustCoverDisjointly) {
  EXPECT_THROW(SubspacePartition(4, {{0, 1}, {1, 2, 3}}), InputError);
  EXPECT_THROW(SubspacePartition(4, {{0, 1}, {2}}), InputError);
  EXPECT_NO_THROW(SubspacePartition(4, {{0, 3}, {1, 2}}));
}

TEST(SubspaceMeasurement, ProjectsOntoBlock) {
  // |psi> = (|00> + |11>)/sqrt2, player 0 measures {0} vs {1}: either block w.p. 1/2.
  const auto s = make_state(RegisterLayout::qubits(2, 1), UniformDiagonal{2});
  const SubspacePartition part(2, {{0}, {1}});
  const auto branches = subspace_branches(s, 0, part);
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_NEAR(branches[0].probability, 0.5, kTol);
  EXPECT_NEAR(std::abs(branches[1].collapsed.amplitude(3)), 1.0, kTol);
}

TEST(ExactDistribution, GhzParityCorrelations) {
  // Hadamard on every qubit of GHZ: only even-parity outcomes survive.
  const auto s = ghz_state(3);
  std::vector<LocalProgram> programs(3, LocalProgram{Unitary::walsh_hadamard(1), ComputationalMeasurement{}});
  const auto dist = exact_outcome_distribution(s, programs);
  EXPECT_NEAR(total(dist), 1.0, 1e-12);
  EXPECT_EQ(dist.size(), 4u);
  for (const auto& [outcome, p] : dist) {
    EXPECT_EQ((outcome[0][0] + outcome[1][0] + outcome[2][0]) % 2, 0u);
    EXPECT_NEAR(p, 0.25, 1e-12);
  }
}

TEST(ExactDistribution, SamplingAgreesWithExact) {
  const auto s = ghz_state(2);
  const LocalProgram prog{Unitary::walsh_hadamard(1), ComputationalMeasurement{}};
  std::vector<LocalProgram> programs(2, prog);
  const auto exact = exact_outcome_distribution(s, programs);
  Rng rng(123);
  std::map<JointOutcome, int> counts;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    PureState shared = s;
    JointOutcome joint;
    for (std::size_t p = 0; p < 2; ++p) joint.push_back(run_program(shared, p, prog, rng));
    ++counts[joint];
  }
  for (const auto& [k, p] : exact) {
    const double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(counts[k]) / n, p, 4 * sigma + 1e-9);
  }
}

TEST(GramSchmidt, CompletesToOrthonormalBasis) {
  const std::vector<std::vector<double>> given{{1, 1, 0, 0}, {0, 0, 1, -1}};
  const auto basis = gram_schmidt_complete(given, 4);
  ASSERT_EQ(basis.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < 4; ++k) dot += basis[i][k] * basis[j][k];
      EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
    }
  EXPECT_NEAR(basis[0][0], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_LT(Unitary::from_real_rows(basis).unitarity_defect(), 1e-12);
}

TEST(GramSchmidt, RejectsBadInput) {
  EXPECT_THROW(gram_schmidt_complete(std::vector<std::vector<double>>{{1, 0}, {1, 1}}, 2), ValidationError);
  EXPECT_THROW(gram_schmidt_complete(std::vector<std::vector<double>>{{0, 0}}, 2), ValidationError);
  EXPECT_THROW(gram_schmidt_complete(std::vector<std::vector<double>>{{1, 0}, {0, 1}, {0, 0}}, 2),
               ValidationError);
}
