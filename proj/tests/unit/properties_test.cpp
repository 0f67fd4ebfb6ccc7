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

#include <algorithm>
#include <random>

#include "pptlocc/estimation.hpp"
#include "pptlocc/network.hpp"
#include "pptlocc/pipeline.hpp"
#include "pptlocc/states.hpp"
#include "test_util.hpp"

namespace pptlocc {
namespace {

using testing::max_diff;

class SeededProperty : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  std::uint64_t seed() const { return GetParam(); }
};

const BipartiteDims kShapes[] = {BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 2), BipartiteDims(3, 3)};

TEST_P(SeededProperty, PartialTransposePreservesTraceAndHermiticity) {
  for (const BipartiteDims& dims : kShapes) {
    const DensityMatrix rho = random_density(dims, seed());
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const ComplexMatrix pt = partial_transpose(rho, s);
      EXPECT_LT(std::abs(pt.trace() - rho.matrix().trace()), 1e-14);
      EXPECT_LT(hermiticity_deviation(pt), 1e-15);
      EXPECT_EQ(partial_transpose(pt, dims, s), rho.matrix());
    }
  }
}

TEST_P(SeededProperty, BothPartialTransposesShareSpectrum) {
  for (const BipartiteDims& dims : kShapes) {
    const DensityMatrix rho = random_density(dims, seed());
    EXPECT_LT(max_diff(hermitian_eigenvalues(partial_transpose(rho, Subsystem::A)),
                       hermitian_eigenvalues(partial_transpose(rho, Subsystem::B))),
              1e-12);
  }
}

TEST_P(SeededProperty, FullTransposeIsBothPartials) {
  const BipartiteDims dims(2, 3);
  const DensityMatrix rho = random_density(dims, seed());
  const ComplexMatrix both = partial_transpose(partial_transpose(rho, Subsystem::A), dims, Subsystem::B);
  EXPECT_EQ(both, rho.matrix().transpose());
}

TEST_P(SeededProperty, SeparableStatesArePpt) {
  for (const BipartiteDims& dims : kShapes) {
    const DensityMatrix rho = random_separable(dims, 1 + seed() % 5, seed());
    EXPECT_GE(min_partial_transpose_eigenvalue(rho), -1e-12);
    EXPECT_NE(run_exact_check(rho).verdict->classification, Classification::NptEntangled);
  }
}

TEST_P(SeededProperty, PowerSumsRecoverSpectrum) {
  const BipartiteDims dims = seed() % 5 == 0 ? BipartiteDims(2, 3) : BipartiteDims(2, 2);
  const DensityMatrix rho = random_density(dims, seed());
  const Spectrum s = spectrum_from_power_sums(power_sums_exact(rho));
  EXPECT_LT(max_diff(s.lambdas, hermitian_eigenvalues(partial_transpose(rho, Subsystem::B))), 1e-8);
}

TEST_P(SeededProperty, NewtonRoundTripOnRealRoots) {
  std::mt19937_64 rng(seed());
  std::uniform_real_distribution<double> u(0.0, 0.2);
  std::vector<double> roots(5);
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = 1.0 - 0.4 * static_cast<double>(i) - u(rng);
  PowerSums ps;
  ps.d = roots.size();
  for (unsigned k = 1; k <= ps.d; ++k) {
    double p = 0.0;
    for (double r : roots) p += std::pow(r, k);
    ps.p.push_back(p);
  }
  ps.standard_errors.assign(ps.d, 0.0);
  EXPECT_LT(max_diff(spectrum_from_power_sums(ps).lambdas, roots), 1e-8);
}

TEST_P(SeededProperty, OutcomeDistributionsAreProbabilities) {
  for (const BipartiteDims& dims : kShapes) {
    const DensityMatrix rho = random_density(dims, seed());
    for (unsigned k = 2; k <= dims.total(); ++k) {
      for (const OutcomeDistribution& d : {stage_one_distribution(rho, k, EvaluationMode::Analytic),
                                           stage_two_distribution(rho, k, EvaluationMode::Analytic)}) {
        double sum = 0.0;
        for (double p : d.p) {
          EXPECT_GE(p, 0.0);
          sum += p;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
}

TEST_P(SeededProperty, StageTwoAnalyticMatchesCircuit) {
  const DensityMatrix rho = random_density(BipartiteDims(2, 2), seed());
  for (unsigned k : {2u, 3u}) {
    const OutcomeDistribution a = stage_two_distribution(rho, k, EvaluationMode::Analytic);
    const OutcomeDistribution f = stage_two_distribution(rho, k, EvaluationMode::FullEvolution);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.p[i], f.p[i], 1e-12);
  }
}

TEST_P(SeededProperty, LoccExactAgreesWithEigensolverVerdict) {
  for (const BipartiteDims& dims : kShapes) {
    const DensityMatrix rho = seed() % 2 == 0 ? random_density(dims, seed()) : random_separable(dims, 2, seed());
    const PipelineResult locc = run_locc(rho, EstimationConfig{}, true);
    ASSERT_FALSE(locc.failure) << *locc.failure;
    EXPECT_EQ(locc.verdict->classification, run_exact_check(rho).verdict->classification);
  }
}

TEST_P(SeededProperty, DepolarizingEventuallySeparable) {
  const DensityMatrix rho = random_density(BipartiteDims(2, 2), seed());
  // Mixing with at least 2/3 of the identity gives lambda_min >= (1 - q) (-1/2) + q / 4 >= 0.
  EXPECT_GE(min_partial_transpose_eigenvalue(depolarize(rho, 2.0 / 3.0)), -1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SeededProperty, ::testing::Range<std::uint64_t>(0, 100));

}  // namespace
}  // namespace pptlocc
