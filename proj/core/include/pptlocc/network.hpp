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

#ifndef PPTLOCC_NETWORK_HPP
#define PPTLOCC_NETWORK_HPP

#include <array>
#include <cstddef>
#include <span>

#include "pptlocc/linalg.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc {

/// Modulus and argument of Tr(U rho).
struct InterferencePattern {
  double visibility = 0.0;
  double phase = 0.0;
  /// Set when the visibility is (numerically) zero; phase is then reported as 0.
  bool degenerate_phase = false;
};

/// Throws DimensionError if u and rho differ in size.
InterferencePattern interference_pattern(const ComplexMatrix& u, const ComplexMatrix& rho);

/// The five trace functionals that parameterize the stage-one ancilla state.
///   mu1 = Tr rho_A^k + Tr rho_B^k       mu2 = Tr rho_A^k - Tr rho_B^k
///   mu3 = (Tr rho^k + eta) / 2          mu4 = (Tr rho^k - eta) / 2
/// with eta = Tr[(rho^{T_B})^k]; mu5 vanishes identically for Hermitian rho.
struct MuParameters {
  unsigned k = 0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;
  double mu4 = 0.0;
  double mu5 = 0.0;

  double trace_a() const noexcept { return 0.5 * (mu1 + mu2); }
  double trace_b() const noexcept { return 0.5 * (mu1 - mu2); }
  double trace_joint() const noexcept { return mu3 + mu4; }
  double eta() const noexcept { return mu3 - mu4; }
};

/// Analytic route: reduced states, matrix powers and the partial transpose.
/// Never forms rho^{(x)k}; mu5 is exactly 0.
MuParameters mu_parameters(const DensityMatrix& rho, unsigned k);

/// The general (complex) form built from the five shift traces
/// Tr[(V_A (x) I) .], Tr[(I (x) V_B) .], Tr[(V_A (x) V_B) .], Tr[(V_A^dag (x) V_B) .],
/// Tr[(V_A (x) V_B^dag) .], each evaluated by the brute-force index sum.
struct ComplexMuParameters {
  unsigned k = 0;
  Complex mu1, mu2, mu3, mu4, mu5;
};
ComplexMuParameters mu_parameters_from_shift_traces(const DensityMatrix& rho, unsigned k);

enum class EvaluationMode { Analytic, FullEvolution };

/// Which partial transpose the network targets. For B Alice applies
/// controlled-V_A^dag and Bob controlled-V_B; for A the daggers swap sides.
enum class TransposeSide { B, A };

enum class AncillaStage { StageOne, StageTwo };

/// Reduced two-qubit state of (a1, b1) after stage one or (a2, b2) after stage
/// two. Alice's qubit is the leading factor.
struct AncillaState {
  AncillaStage which = AncillaStage::StageOne;
  ComplexMatrix matrix;
};

/// Probabilities of the four ancilla outcomes |ij>, i for Alice and j for Bob.
struct OutcomeDistribution {
  unsigned k = 0;
  std::array<double, 4> p{};  // p00, p01, p10, p11

  double p00() const noexcept { return p[0]; }
  double p01() const noexcept { return p[1]; }
  double p10() const noexcept { return p[2]; }
  double p11() const noexcept { return p[3]; }
  /// P00 - P01 - P10 + P11.
  double alternating_sum() const noexcept { return p[0] - p[1] - p[2] + p[3]; }
  /// P00 + P01 - P10 - P11, the <Z> of Alice's qubit.
  double alice_marginal() const noexcept { return p[0] + p[1] - p[2] - p[3]; }
  /// P00 - P01 + P10 - P11, the <Z> of Bob's qubit.
  double bob_marginal() const noexcept { return p[0] - p[1] + p[2] - p[3]; }
};

/// Largest register dimension the full-evolution oracle will build.
inline constexpr std::size_t kFullEvolutionGuard = 4096;

/// (d_A d_B)^k * 4, saturating; compare against kFullEvolutionGuard.
std::size_t full_evolution_dimension(const BipartiteDims& dims, unsigned k);

/// Stage one on (a1, b1). Analytic mode fills the mu template
///
///   1/4 [ 1+mu1+mu3      0           0        -mu4     ]
///       [   0       1+mu2-mu3      mu4          0      ]
///       [   0          mu4      1-mu2-mu3       0      ]
///       [ -mu4           0           0      1-mu1+mu3  ]
///
/// in the (a1, b1) basis. Full-evolution mode runs H, controlled shifts, H on
/// rho^{(x)k} (x) |00><00| and traces out the copies.
AncillaState stage_one_state(const DensityMatrix& rho, unsigned k, EvaluationMode mode,
                             TransposeSide side = TransposeSide::B);

/// Stage two on (a2, b2): Hadamards on a2 and b2, controlled-R+ (a2 -> a1),
/// controlled-R- (b2 -> b1), Hadamards again. The output is diagonal:
///
///   P(ij) = [1 + (-1)^i Tr(rho_A^k)/sqrt2 + (-1)^j Tr(rho_B^k)/sqrt2
///              + (-1)^(i+j) eta/2] / 4.
AncillaState stage_two_state(const DensityMatrix& rho, unsigned k, EvaluationMode mode,
                             TransposeSide side = TransposeSide::B);

/// Diagonal of stage_one_state; at k = 2 its alternating sum is Tr[(rho^{T_B})^2].
OutcomeDistribution stage_one_distribution(const DensityMatrix& rho, unsigned k,
                                           EvaluationMode mode);
OutcomeDistribution stage_two_distribution(const DensityMatrix& rho, unsigned k,
                                           EvaluationMode mode);
OutcomeDistribution stage_two_distribution_TA(const DensityMatrix& rho, unsigned k,
                                              EvaluationMode mode);

ComplexMatrix hadamard();
/// (sigma_z + sigma_y) / sqrt2.
ComplexMatrix r_plus();
/// (sigma_z - sigma_y) / sqrt2.
ComplexMatrix r_minus();

/// rho <- U rho U^dag where U acts on the listed tensor factors (in the order
/// given, first most significant) and as the identity elsewhere.
ComplexMatrix apply_local_unitary(const ComplexMatrix& rho, std::span<const std::size_t> factor_dims,
                                  std::span<const std::size_t> targets, const ComplexMatrix& u);

}  // namespace pptlocc

#endif  // PPTLOCC_NETWORK_HPP
