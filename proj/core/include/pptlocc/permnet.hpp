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

#ifndef PPTLOCC_PERMNET_HPP
#define PPTLOCC_PERMNET_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pptlocc/linalg.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc {

/// Forward is V_k (last factor moves to the front); Inverse is V_k^dag.
enum class ShiftDirection { Forward, Inverse };

/// Action of a party's gate inside a brute-force trace.
enum class PartyShift { Identity, Forward, Inverse };

struct ShiftSpec {
  unsigned k = 1;
  std::size_t d = 2;
  ShiftDirection direction = ShiftDirection::Forward;
};

/// A bijection of the d^k computational basis states: image(x) = map[x].
class BasisPermutation {
 public:
  explicit BasisPermutation(std::vector<std::size_t> map);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator[](std::size_t x) const { return map_[x]; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

  BasisPermutation inverse() const;
  /// (this * other)[x] = this[other[x]].
  BasisPermutation compose(const BasisPermutation& other) const;
  bool is_identity() const noexcept;
  /// Permutation matrix with entry (map[x], x) = 1.
  ComplexMatrix to_matrix() const;

  friend bool operator==(const BasisPermutation&, const BasisPermutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Largest d^k accepted by build_shift_matrix.
inline constexpr std::size_t kShiftMatrixGuard = 4096;
/// Largest number of index tuples shift_trace_bruteforce will enumerate.
inline constexpr std::uint64_t kBruteForceGuard = 100'000'000;

/// Basis permutation of V_k or V_k^dag. Throws SizeGuardError if d^k overflows.
BasisPermutation shift_permutation(const ShiftSpec& spec);
/// Dense V_k; throws SizeGuardError if d^k > kShiftMatrixGuard.
ComplexMatrix build_shift_matrix(const ShiftSpec& spec);

/// Number of index tuples the brute-force oracle visits, saturating on overflow.
std::uint64_t bruteforce_terms(const BipartiteDims& dims, unsigned k);

/// Tr[(X_A (x) Y_B) rho^{(x)k}] summed index by index from the entries of rho,
/// never forming rho^{(x)k}. X_A permutes the k copies of A, Y_B those of B.
/// Throws SizeGuardError above kBruteForceGuard tuples.
Complex shift_trace_bruteforce(const DensityMatrix& rho, unsigned k, PartyShift alice,
                               PartyShift bob);

/// |0><0| (x) I + |1><1| (x) u with the control as the leading factor. Throws
/// PhysicalityError if u is not unitary within 1e-9.
ComplexMatrix controlled_unitary(const ComplexMatrix& u);

}  // namespace pptlocc

#endif  // PPTLOCC_PERMNET_HPP
