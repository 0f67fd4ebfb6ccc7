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

#include "pptlocc/network.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pptlocc/errors.hpp"
#include "pptlocc/permnet.hpp"

namespace pptlocc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kNegativeProbabilityFloor = -1e-12;

double real_trace_of_power(const ComplexMatrix& m, unsigned k) {
  return trace_of_power(m, k).real();
}

double transposed_power_trace(const DensityMatrix& rho, unsigned k, TransposeSide side) {
  const Subsystem which = side == TransposeSide::B ? Subsystem::B : Subsystem::A;
  return real_trace_of_power(partial_transpose(rho, which), k);
}

MuParameters mu_for_side(const DensityMatrix& rho, unsigned k, TransposeSide side) {
  if (k < 1) {
    throw DimensionError("mu_parameters: k must be positive");
  }
  const double ta = real_trace_of_power(partial_trace(rho, Subsystem::A), k);
  const double tb = real_trace_of_power(partial_trace(rho, Subsystem::B), k);
  const double joint = real_trace_of_power(rho.matrix(), k);
  const double eta = transposed_power_trace(rho, k, side);
  MuParameters mu;
  mu.k = k;
  mu.mu1 = ta + tb;
  mu.mu2 = ta - tb;
  mu.mu3 = 0.5 * joint + 0.5 * eta;
  mu.mu4 = 0.5 * joint - 0.5 * eta;
  mu.mu5 = 0.0;
  return mu;
}

ComplexMatrix stage_one_template(const MuParameters& mu) {
  ComplexMatrix m(4, 4);
  m(0, 0) = 1.0 + mu.mu1 + mu.mu3;
  m(1, 1) = 1.0 + mu.mu2 - mu.mu3;
  m(2, 2) = 1.0 - mu.mu2 - mu.mu3;
  m(3, 3) = 1.0 - mu.mu1 + mu.mu3;
  m(0, 3) = m(3, 0) = -mu.mu4;
  m(1, 2) = m(2, 1) = mu.mu4;
  m *= 0.25;
  return m;
}

void check_guard(const BipartiteDims& dims, unsigned k) {
  const std::size_t n = full_evolution_dimension(dims, k);
  if (n > kFullEvolutionGuard) {
    throw SizeGuardError("full evolution needs a " + std::to_string(n) +
                         "-dimensional register; guard is " + std::to_string(kFullEvolutionGuard));
  }
}

// Register layout: A1 B1 A2 B2 ... Ak Bk a1 b1.
ComplexMatrix stage_one_full(const DensityMatrix& rho, unsigned k, TransposeSide side) {
  check_guard(rho.dims(), k);
  const std::size_t da = rho.dims().a();
  const std::size_t db = rho.dims().b();

  std::vector<std::size_t> dims;
  std::vector<std::size_t> alice_factors;
  std::vector<std::size_t> bob_factors;
  for (unsigned t = 0; t < k; ++t) {
    dims.push_back(da);
    dims.push_back(db);
  }
  const std::size_t a1 = dims.size();
  const std::size_t b1 = a1 + 1;
  dims.push_back(2);
  dims.push_back(2);
  alice_factors.push_back(a1);
  bob_factors.push_back(b1);
  for (unsigned t = 0; t < k; ++t) {
    alice_factors.push_back(2 * t);
    bob_factors.push_back(2 * t + 1);
  }

  ComplexMatrix state = rho.matrix();
  for (unsigned t = 1; t < k; ++t) state = kron(state, rho.matrix());
  state = kron(state, ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));

  const ShiftDirection alice_dir =
      side == TransposeSide::B ? ShiftDirection::Inverse : ShiftDirection::Forward;
  const ShiftDirection bob_dir =
      side == TransposeSide::B ? ShiftDirection::Forward : ShiftDirection::Inverse;
  const ComplexMatrix alice_gate = controlled_unitary(build_shift_matrix({k, da, alice_dir}));
  const ComplexMatrix bob_gate = controlled_unitary(build_shift_matrix({k, db, bob_dir}));
  const ComplexMatrix h = hadamard();
  const std::size_t just_a1[] = {a1};
  const std::size_t just_b1[] = {b1};

  state = apply_local_unitary(state, dims, just_a1, h);
  state = apply_local_unitary(state, dims, just_b1, h);
  state = apply_local_unitary(state, dims, alice_factors, alice_gate);
  state = apply_local_unitary(state, dims, bob_factors, bob_gate);
  state = apply_local_unitary(state, dims, just_a1, h);
  state = apply_local_unitary(state, dims, just_b1, h);

  const std::size_t keep[] = {a1, b1};
  return partial_trace(state, dims, keep);
}

// Register layout: a1 b1 a2 b2.
ComplexMatrix stage_two_full(const ComplexMatrix& stage_one) {
  const std::size_t dims[] = {2, 2, 2, 2};
  ComplexMatrix state = kron(stage_one, ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
  const ComplexMatrix h = hadamard();
  const std::size_t a2[] = {2};
  const std::size_t b2[] = {3};
  const std::size_t alice_ctrl[] = {2, 0};
  const std::size_t bob_ctrl[] = {3, 1};

  state = apply_local_unitary(state, dims, a2, h);
  state = apply_local_unitary(state, dims, b2, h);
  state = apply_local_unitary(state, dims, alice_ctrl, controlled_unitary(r_plus()));
  state = apply_local_unitary(state, dims, bob_ctrl, controlled_unitary(r_minus()));
  state = apply_local_unitary(state, dims, a2, h);
  state = apply_local_unitary(state, dims, b2, h);

  const std::size_t keep[] = {2, 3};
  return partial_trace(state, dims, keep);
}

OutcomeDistribution diagonal_distribution(const ComplexMatrix& m, unsigned k) {
  OutcomeDistribution dist;
  dist.k = k;
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = m(i, i).real();
    if (p < kNegativeProbabilityFloor) {
      throw Error("ancilla outcome probability " + std::to_string(p) + " is negative");
    }
    dist.p[i] = p < 0.0 ? 0.0 : p;
  }
  return dist;
}

}  // namespace

InterferencePattern interference_pattern(const ComplexMatrix& u, const ComplexMatrix& rho) {
  if (!u.is_square() || u.rows() != rho.rows() || !rho.is_square()) {
    throw DimensionError("interference_pattern: gate and state sizes differ");
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) t += u(i, j) * rho(j, i);
  }
  InterferencePattern pattern;
  pattern.visibility = std::abs(t);
  if (pattern.visibility < 1e-12) {
    pattern.degenerate_phase = true;
    pattern.phase = 0.0;
  } else {
    pattern.phase = std::arg(t);
    // arg returns [-pi, pi]; fold -pi onto pi.
    if (pattern.phase <= -std::numbers::pi) pattern.phase = std::numbers::pi;
  }
  return pattern;
}

MuParameters mu_parameters(const DensityMatrix& rho, unsigned k) {
  return mu_for_side(rho, k, TransposeSide::B);
}

ComplexMuParameters mu_parameters_from_shift_traces(const DensityMatrix& rho, unsigned k) {
  using PS = PartyShift;
  const Complex ta = shift_trace_bruteforce(rho, k, PS::Forward, PS::Identity);
  const Complex tb = shift_trace_bruteforce(rho, k, PS::Identity, PS::Forward);
  const Complex joint = shift_trace_bruteforce(rho, k, PS::Forward, PS::Forward);
  const Complex dag_a = shift_trace_bruteforce(rho, k, PS::Inverse, PS::Forward);
  const Complex dag_b = shift_trace_bruteforce(rho, k, PS::Forward, PS::Inverse);
  ComplexMuParameters mu;
  mu.k = k;
  mu.mu1 = ta + tb;
  mu.mu2 = ta - tb;
  mu.mu3 = 0.5 * joint + 0.25 * dag_a + 0.25 * dag_b;
  mu.mu4 = 0.5 * joint - 0.25 * dag_a - 0.25 * dag_b;
  mu.mu5 = 0.25 * dag_a - 0.25 * dag_b;
  return mu;
}

std::size_t full_evolution_dimension(const BipartiteDims& dims, unsigned k) {
  std::size_t n = 4;
  for (unsigned t = 0; t < k; ++t) {
    if (n > std::numeric_limits<std::size_t>::max() / dims.total()) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= dims.total();
  }
  return n;
}

AncillaState stage_one_state(const DensityMatrix& rho, unsigned k, EvaluationMode mode,
                             TransposeSide side) {
  if (k < 1) {
    throw DimensionError("stage_one_state: k must be positive");
  }
  AncillaState out;
  out.which = AncillaStage::StageOne;
  out.matrix = mode == EvaluationMode::Analytic ? stage_one_template(mu_for_side(rho, k, side))
                                                : stage_one_full(rho, k, side);
  return out;
}

AncillaState stage_two_state(const DensityMatrix& rho, unsigned k, EvaluationMode mode,
                             TransposeSide side) {
  if (k < 1) {
    throw DimensionError("stage_two_state: k must be positive");
  }
  AncillaState out;
  out.which = AncillaStage::StageTwo;
  if (mode == EvaluationMode::FullEvolution) {
    out.matrix = stage_two_full(stage_one_full(rho, k, side));
    return out;
  }
  const MuParameters mu = mu_for_side(rho, k, side);
  const double alice = kInvSqrt2 * mu.trace_a();
  const double bob = kInvSqrt2 * mu.trace_b();
  const double corr = 0.5 * mu.eta();
  out.matrix = ComplexMatrix::diagonal({
      0.25 * (1.0 + alice + bob + corr),
      0.25 * (1.0 + alice - bob - corr),
      0.25 * (1.0 - alice + bob - corr),
      0.25 * (1.0 - alice - bob + corr),
  });
  return out;
}

OutcomeDistribution stage_one_distribution(const DensityMatrix& rho, unsigned k,
                                           EvaluationMode mode) {
  return diagonal_distribution(stage_one_state(rho, k, mode).matrix, k);
}

OutcomeDistribution stage_two_distribution(const DensityMatrix& rho, unsigned k,
                                           EvaluationMode mode) {
  return diagonal_distribution(stage_two_state(rho, k, mode, TransposeSide::B).matrix, k);
}

OutcomeDistribution stage_two_distribution_TA(const DensityMatrix& rho, unsigned k,
                                              EvaluationMode mode) {
  return diagonal_distribution(stage_two_state(rho, k, mode, TransposeSide::A).matrix, k);
}

ComplexMatrix hadamard() {
  return ComplexMatrix{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
}

ComplexMatrix r_plus() {
  const Complex i(0.0, 1.0);
  return ComplexMatrix{{kInvSqrt2, -i * kInvSqrt2}, {i * kInvSqrt2, -kInvSqrt2}};
}

ComplexMatrix r_minus() {
  const Complex i(0.0, 1.0);
  return ComplexMatrix{{kInvSqrt2, i * kInvSqrt2}, {-i * kInvSqrt2, -kInvSqrt2}};
}

ComplexMatrix apply_local_unitary(const ComplexMatrix& rho, std::span<const std::size_t> factor_dims,
                                  std::span<const std::size_t> targets, const ComplexMatrix& u) {
  const std::size_t n = factor_dims.size();
  std::vector<std::size_t> stride(n);
  std::size_t total = 1;
  for (std::size_t f = n; f-- > 0;) {
    stride[f] = total;
    total *= factor_dims[f];
  }
  if (!rho.is_square() || rho.rows() != total) {
    throw DimensionError("apply_local_unitary: state size does not match factor dimensions");
  }
  std::vector<bool> used(n, false);
  std::size_t local = 1;
  for (std::size_t t : targets) {
    if (t >= n || used[t]) {
      throw DimensionError("apply_local_unitary: invalid or repeated target factor");
    }
    used[t] = true;
    local *= factor_dims[t];
  }
  if (!u.is_square() || u.rows() != local) {
    throw DimensionError("apply_local_unitary: gate size does not match target factors");
  }

  // offset[t]: register offset of local basis state t; local_of[x]: local index
  // of register index x; base = x - offset[local_of[x]].
  std::vector<std::size_t> offset(local, 0);
  for (std::size_t t = 0; t < local; ++t) {
    std::size_t rem = t;
    for (std::size_t s = targets.size(); s-- > 0;) {
      const std::size_t d = factor_dims[targets[s]];
      offset[t] += (rem % d) * stride[targets[s]];
      rem /= d;
    }
  }
  std::vector<std::size_t> local_of(total);
  for (std::size_t x = 0; x < total; ++x) {
    std::size_t t = 0;
    for (std::size_t target : targets) t = t * factor_dims[target] + (x / stride[target]) % factor_dims[target];
    local_of[x] = t;
  }

  ComplexMatrix left(total, total);
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t tx = local_of[x];
    const std::size_t base = x - offset[tx];
    for (std::size_t tp = 0; tp < local; ++tp) {
      const Complex g = u(tx, tp);
      if (g == Complex{}) continue;
      const std::size_t src = base + offset[tp];
      for (std::size_t y = 0; y < total; ++y) left(x, y) += g * rho(src, y);
    }
  }
  ComplexMatrix out(total, total);
  for (std::size_t y = 0; y < total; ++y) {
    const std::size_t ty = local_of[y];
    const std::size_t base = y - offset[ty];
    for (std::size_t tp = 0; tp < local; ++tp) {
      const Complex g = std::conj(u(ty, tp));
      if (g == Complex{}) continue;
      const std::size_t src = base + offset[tp];
      for (std::size_t x = 0; x < total; ++x) out(x, y) += left(x, src) * g;
    }
  }
  return out;
}

}  // namespace pptlocc
