// Copyright 2026 The pptlocc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pptlocc/errors.hpp"
#include "pptlocc/network.hpp"
#include "pptlocc/permnet.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc {
namespace {

constexpr double kRt2 = std::numbers::sqrt2;
using Mode = EvaluationMode;

std::vector<DensityMatrix> two_qubit_fixtures() {
  std::vector<DensityMatrix> out;
  out.push_back(maximally_mixed(BipartiteDims(2, 2)));
  out.push_back(basis_product(BipartiteDims(2, 2), 0, 0));
  out.push_back(bell_state(BellKind::PhiPlus));
  out.push_back(werner(0.4));
  for (std::uint64_t seed = 0; seed < 4; ++seed) out.push_back(random_density(BipartiteDims(2, 2), seed));
  out.push_back(random_separable(BipartiteDims(2, 2), 3, 9));
  return out;
}

// Circuit prediction for the a2 b2 readout given the three traces it depends on.
std::array<double, 4> stage_two_prediction(double ta, double tb, double eta) {
  const double a = ta / kRt2, b = tb / kRt2, c = eta / 2.0;
  return {(1 + a + b + c) / 4, (1 + a - b - c) / 4, (1 - a + b - c) / 4, (1 - a - b + c) / 4};
}

void expect_distribution(const OutcomeDistribution& dist, const std::array<double, 4>& expected, double tol) {
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(dist.p[i], expected[i], tol) << "outcome " << i;
}

TEST(InterferencePattern, IdentityGate) {
  const InterferencePattern p = interference_pattern(ComplexMatrix::identity(4), bell_state(BellKind::PhiPlus).matrix());
  EXPECT_NEAR(p.visibility, 1.0, 1e-15);
  EXPECT_NEAR(p.phase, 0.0, 1e-15);
  EXPECT_FALSE(p.degenerate_phase);
}

TEST(InterferencePattern, ZeroVisibilityFlagsPhase) {
  const ComplexMatrix z = ComplexMatrix::diagonal({1.0, -1.0});
  const InterferencePattern p = interference_pattern(z, ComplexMatrix::diagonal({0.5, 0.5}));
  EXPECT_NEAR(p.visibility, 0.0, 1e-15);
  EXPECT_TRUE(p.degenerate_phase);
  EXPECT_EQ(p.phase, 0.0);
  EXPECT_FALSE(std::isnan(p.phase));
}

TEST(InterferencePattern, SwapGivesPurity) {
  const ComplexMatrix half = ComplexMatrix::diagonal({0.5, 0.5});
  const InterferencePattern p =
      interference_pattern(build_shift_matrix({2, 2, ShiftDirection::Forward}), kron(half, half));
  EXPECT_NEAR(p.visibility, 0.5, 1e-15);
  EXPECT_NEAR(p.phase, 0.0, 1e-15);
}

TEST(InterferencePattern, PhaseOfDiagonalGate) {
  const Complex i(0.0, 1.0);
  const ComplexMatrix s{{i, 0.0}, {0.0, i}};
  const InterferencePattern p = interference_pattern(s, ComplexMatrix::diagonal({0.3, 0.7}));
  EXPECT_NEAR(p.visibility, 1.0, 1e-15);
  EXPECT_NEAR(p.phase, std::numbers::pi / 2, 1e-15);
  const InterferencePattern q = interference_pattern(ComplexMatrix::identity(2) * Complex(-1.0),
                                                     ComplexMatrix::diagonal({0.3, 0.7}));
  EXPECT_NEAR(q.phase, std::numbers::pi, 1e-15);
}

TEST(InterferencePattern, SizeMismatch) {
  EXPECT_THROW(interference_pattern(ComplexMatrix::identity(2), ComplexMatrix::identity(4)), DimensionError);
}

TEST(MuParameters, MaximallyMixedKTwo) {
  const MuParameters mu = mu_parameters(maximally_mixed(BipartiteDims(2, 2)), 2);
  EXPECT_NEAR(mu.mu1, 1.0, 1e-15);
  EXPECT_NEAR(mu.mu2, 0.0, 1e-15);
  EXPECT_NEAR(mu.mu3, 0.25, 1e-15);
  EXPECT_NEAR(mu.mu4, 0.0, 1e-15);
  EXPECT_EQ(mu.mu5, 0.0);
}

TEST(MuParameters, PureProductAnyK) {
  const DensityMatrix rho = basis_product(BipartiteDims(2, 3), 1, 2);
  for (unsigned k = 1; k <= 5; ++k) {
    const MuParameters mu = mu_parameters(rho, k);
    EXPECT_NEAR(mu.mu1, 2.0, 1e-14);
    EXPECT_NEAR(mu.mu2, 0.0, 1e-14);
    EXPECT_NEAR(mu.mu3, 1.0, 1e-14);
    EXPECT_NEAR(mu.mu4, 0.0, 1e-14);
  }
}

TEST(MuParameters, BellKThree) {
  const MuParameters mu = mu_parameters(bell_state(BellKind::PhiPlus), 3);
  EXPECT_NEAR(mu.mu1, 0.5, 1e-15);
  EXPECT_NEAR(mu.mu2, 0.0, 1e-15);
  EXPECT_NEAR(mu.mu3, 0.625, 1e-15);
  EXPECT_NEAR(mu.mu4, 0.375, 1e-15);
  EXPECT_NEAR(mu.eta(), 0.25, 1e-15);
  EXPECT_NEAR(mu.trace_joint(), 1.0, 1e-15);
}

TEST(MuParameters, AnalyticMatchesShiftTraces) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const DensityMatrix rho = random_density(BipartiteDims(2, 3), seed);
    for (unsigned k = 1; k <= 4; ++k) {
      const MuParameters mu = mu_parameters(rho, k);
      const ComplexMuParameters ref = mu_parameters_from_shift_traces(rho, k);
      EXPECT_LT(std::abs(ref.mu1 - mu.mu1), 1e-12);
      EXPECT_LT(std::abs(ref.mu2 - mu.mu2), 1e-12);
      EXPECT_LT(std::abs(ref.mu3 - mu.mu3), 1e-12);
      EXPECT_LT(std::abs(ref.mu4 - mu.mu4), 1e-12);
      EXPECT_LT(std::abs(ref.mu5), 1e-12);
    }
  }
}

TEST(MuParameters, RejectsZeroK) {
  EXPECT_THROW(mu_parameters(werner(0.5), 0), DimensionError);
}

TEST(StageOne, MaximallyMixedKTwo) {
  const AncillaState s = stage_one_state(maximally_mixed(BipartiteDims(2, 2)), 2, Mode::Analytic);
  EXPECT_EQ(s.which, AncillaStage::StageOne);
  EXPECT_LT(max_abs_diff(s.matrix, ComplexMatrix::diagonal({0.5625, 0.1875, 0.1875, 0.0625})), 1e-15);
}

TEST(StageOne, PureProductKTwo) {
  const AncillaState s = stage_one_state(basis_product(BipartiteDims(2, 2), 0, 1), 2, Mode::Analytic);
  EXPECT_LT(max_abs_diff(s.matrix, ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0})), 1e-15);
}

TEST(StageOne, AnalyticMatchesFullEvolution) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    for (unsigned k : {1u, 2u, 3u}) {
      const ComplexMatrix analytic = stage_one_state(rho, k, Mode::Analytic).matrix;
      const ComplexMatrix full = stage_one_state(rho, k, Mode::FullEvolution).matrix;
      EXPECT_LT((analytic - full).frobenius_norm(), 1e-10) << "k=" << k;
    }
  }
}

TEST(StageOne, AnalyticMatchesFullEvolutionTransposeA) {
  const DensityMatrix rho = random_density(BipartiteDims(2, 3), 5);
  for (unsigned k : {2u, 3u}) {
    const ComplexMatrix analytic = stage_one_state(rho, k, Mode::Analytic, TransposeSide::A).matrix;
    const ComplexMatrix full = stage_one_state(rho, k, Mode::FullEvolution, TransposeSide::A).matrix;
    EXPECT_LT((analytic - full).frobenius_norm(), 1e-10);
  }
}

TEST(StageOne, AliceMarginalIsReducedPurity) {
  const DensityMatrix rho = random_density(BipartiteDims(2, 2), 12);
  for (unsigned k : {2u, 3u}) {
    const OutcomeDistribution d = stage_one_distribution(rho, k, Mode::FullEvolution);
    EXPECT_NEAR(d.alice_marginal(), trace_of_power(partial_trace(rho, Subsystem::A), k).real(), 1e-12);
    EXPECT_NEAR(d.bob_marginal(), trace_of_power(partial_trace(rho, Subsystem::B), k).real(), 1e-12);
  }
}

TEST(StageOne, KTwoShortcutGivesPurity) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    const double purity = trace_of_power(rho.matrix(), 2).real();
    const double tb2 = trace_of_power(partial_transpose(rho, Subsystem::B), 2).real();
    EXPECT_NEAR(tb2, purity, 1e-12);
    EXPECT_NEAR(stage_one_distribution(rho, 2, Mode::Analytic).alternating_sum(), purity, 1e-10);
    EXPECT_NEAR(stage_one_distribution(rho, 2, Mode::FullEvolution).alternating_sum(), purity, 1e-10);
  }
}

TEST(StageOne, FullEvolutionGuard) {
  EXPECT_THROW(stage_one_state(random_density(BipartiteDims(3, 3), 1), 4, Mode::FullEvolution), SizeGuardError);
  EXPECT_NO_THROW(stage_one_state(random_density(BipartiteDims(3, 3), 1), 4, Mode::Analytic));
  EXPECT_EQ(full_evolution_dimension(BipartiteDims(2, 2), 3), 256u);
}

TEST(StageTwo, MaximallyMixedKTwo) {
  const OutcomeDistribution d = stage_two_distribution(maximally_mixed(BipartiteDims(2, 2)), 2, Mode::Analytic);
  expect_distribution(d, stage_two_prediction(0.5, 0.5, 0.25), 1e-15);
  EXPECT_NEAR(d.p00(), (1.0 + kRt2 / 2 + 0.125) / 4, 1e-15);
  EXPECT_NEAR(d.alternating_sum(), 0.125, 1e-15);
}

TEST(StageTwo, PureProductKTwo) {
  const OutcomeDistribution d = stage_two_distribution(basis_product(BipartiteDims(2, 2), 0, 0), 2, Mode::Analytic);
  expect_distribution(d, {(1.5 + kRt2) / 4, 0.125, 0.125, (1.5 - kRt2) / 4}, 1e-15);
}

TEST(StageTwo, BellKThree) {
  const OutcomeDistribution d = stage_two_distribution(bell_state(BellKind::PhiPlus), 3, Mode::Analytic);
  expect_distribution(d, stage_two_prediction(0.25, 0.25, 0.25), 1e-15);
  EXPECT_NEAR(2.0 * d.alternating_sum(), 0.25, 1e-15);
}

TEST(StageTwo, AnalyticMatchesFullEvolution) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    for (unsigned k : {2u, 3u}) {
      const OutcomeDistribution a = stage_two_distribution(rho, k, Mode::Analytic);
      const OutcomeDistribution f = stage_two_distribution(rho, k, Mode::FullEvolution);
      for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.p[i], f.p[i], 1e-12);
    }
  }
}

TEST(StageTwo, FullEvolutionIsDiagonal) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    const ComplexMatrix m = stage_two_state(rho, 3, Mode::FullEvolution).matrix;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        if (r != c) EXPECT_LT(std::abs(m(r, c)), 1e-12);
  }
}

TEST(StageTwo, ProbabilitiesNormalized) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    for (Mode mode : {Mode::Analytic, Mode::FullEvolution}) {
      const OutcomeDistribution d = stage_two_distribution(rho, 2, mode);
      double sum = 0.0;
      for (double p : d.p) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(StageTwo, MarginalsAreScaledReducedPowers) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    const OutcomeDistribution d = stage_two_distribution(rho, 3, Mode::FullEvolution);
    const double ta = trace_of_power(partial_trace(rho, Subsystem::A), 3).real();
    const double tb = trace_of_power(partial_trace(rho, Subsystem::B), 3).real();
    EXPECT_NEAR(kRt2 * d.alice_marginal(), ta, 1e-12);
    EXPECT_NEAR(kRt2 * d.bob_marginal(), tb, 1e-12);
  }
}

TEST(StageTwo, AlternatingSumIsHalfTransposedMoment) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    for (unsigned k : {2u, 3u}) {
      const double eta = trace_of_power(partial_transpose(rho, Subsystem::B), k).real();
      EXPECT_NEAR(2.0 * stage_two_distribution(rho, k, Mode::FullEvolution).alternating_sum(), eta, 1e-12);
    }
  }
}

TEST(StageTwoTA, MatchesTransposeBVariant) {
  for (const DensityMatrix& rho : two_qubit_fixtures()) {
    for (unsigned k : {2u, 3u, 4u}) {
      EXPECT_NEAR(stage_two_distribution_TA(rho, k, Mode::Analytic).alternating_sum(),
                  stage_two_distribution(rho, k, Mode::Analytic).alternating_sum(), 1e-10);
    }
    EXPECT_NEAR(stage_two_distribution_TA(rho, 3, Mode::FullEvolution).alternating_sum(),
                stage_two_distribution(rho, 3, Mode::FullEvolution).alternating_sum(), 1e-10);
  }
}

TEST(StageTwoTA, MaximallyMixedSameAsTransposeB) {
  const DensityMatrix rho = maximally_mixed(BipartiteDims(2, 2));
  const OutcomeDistribution a = stage_two_distribution_TA(rho, 2, Mode::Analytic);
  const OutcomeDistribution b = stage_two_distribution(rho, 2, Mode::Analytic);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.p[i], b.p[i], 1e-15);
}

TEST(Gates, AreUnitary) {
  EXPECT_TRUE(is_unitary(hadamard()));
  EXPECT_TRUE(is_unitary(r_plus()));
  EXPECT_TRUE(is_unitary(r_minus()));
  EXPECT_NEAR(r_plus()(0, 0).real(), 1.0 / kRt2, 1e-15);
}

TEST(ApplyLocalUnitary, MatchesKroneckerEmbedding) {
  const ComplexMatrix rho = random_density(BipartiteDims(2, 3), 1).matrix();
  const std::size_t dims[] = {2, 3};
  const std::size_t first[] = {0};
  const ComplexMatrix h = hadamard();
  const ComplexMatrix u = kron(h, ComplexMatrix::identity(3));
  EXPECT_LT(max_abs_diff(apply_local_unitary(rho, dims, first, h), u * rho * u.adjoint()), 1e-14);
  const std::size_t both_swapped[] = {1, 0};
  EXPECT_THROW(apply_local_unitary(rho, dims, both_swapped, h), DimensionError);
}

}  // namespace
}  // namespace pptlocc
