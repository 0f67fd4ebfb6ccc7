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

#include "pptlocc/permnet.hpp"

#include <limits>
#include <string>

#include "pptlocc/errors.hpp"

namespace pptlocc {

namespace {

std::size_t checked_power(std::size_t base, unsigned exp) {
  std::size_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::size_t>::max() / base) {
      throw SizeGuardError("d^k overflows: d = " + std::to_string(base) +
                           ", k = " + std::to_string(exp));
    }
    out *= base;
  }
  return out;
}

// Digit t of the row/column index of copy t after the party gate acts, given
// the column digits. Tr(P M) = sum_x M[P^-1 x, x], so the row digits are
// P^-1 applied to the column digits. For V_k, (V_k^-1 x)_t = x_{t+1}.
inline std::size_t source_copy(PartyShift shift, unsigned t, unsigned k) {
  switch (shift) {
    case PartyShift::Identity: return t;
    case PartyShift::Forward: return (t + 1) % k;
    case PartyShift::Inverse: return (t + k - 1) % k;
  }
  return t;
}

}  // namespace

BasisPermutation::BasisPermutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t image : map_) {
    if (image >= map_.size() || seen[image]) {
      throw DimensionError("BasisPermutation: map is not a bijection");
    }
    seen[image] = true;
  }
}

BasisPermutation BasisPermutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t x = 0; x < map_.size(); ++x) inv[map_[x]] = x;
  return BasisPermutation(std::move(inv));
}

BasisPermutation BasisPermutation::compose(const BasisPermutation& other) const {
  if (other.size() != size()) {
    throw DimensionError("BasisPermutation::compose: size mismatch");
  }
  std::vector<std::size_t> out(size());
  for (std::size_t x = 0; x < size(); ++x) out[x] = map_[other.map_[x]];
  return BasisPermutation(std::move(out));
}

bool BasisPermutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < map_.size(); ++x) {
    if (map_[x] != x) return false;
  }
  return true;
}

ComplexMatrix BasisPermutation::to_matrix() const {
  ComplexMatrix m(size(), size());
  for (std::size_t x = 0; x < size(); ++x) m(map_[x], x) = 1.0;
  return m;
}

BasisPermutation shift_permutation(const ShiftSpec& spec) {
  if (spec.k < 1 || spec.d < 2) {
    throw DimensionError("shift_permutation: need k >= 1 and d >= 2");
  }
  const std::size_t n = checked_power(spec.d, spec.k);
  const std::size_t top = n / spec.d;  // weight of the leading digit
  std::vector<std::size_t> map(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (spec.direction == ShiftDirection::Forward) {
      // (x1 .. xk) -> (xk x1 .. x_{k-1})
      map[x] = (x % spec.d) * top + x / spec.d;
    } else {
      // (x1 .. xk) -> (x2 .. xk x1)
      map[x] = (x % top) * spec.d + x / top;
    }
  }
  return BasisPermutation(std::move(map));
}

ComplexMatrix build_shift_matrix(const ShiftSpec& spec) {
  const std::size_t n = checked_power(spec.d, spec.k);
  if (n > kShiftMatrixGuard) {
    throw SizeGuardError("build_shift_matrix: d^k = " + std::to_string(n) + " exceeds " +
                         std::to_string(kShiftMatrixGuard));
  }
  return shift_permutation(spec).to_matrix();
}

std::uint64_t bruteforce_terms(const BipartiteDims& dims, unsigned k) {
  std::uint64_t terms = 1;
  const std::uint64_t d = dims.total();
  for (unsigned i = 0; i < k; ++i) {
    if (terms > std::numeric_limits<std::uint64_t>::max() / d) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    terms *= d;
  }
  return terms;
}

Complex shift_trace_bruteforce(const DensityMatrix& rho, unsigned k, PartyShift alice,
                               PartyShift bob) {
  if (k < 1) {
    throw DimensionError("shift_trace_bruteforce: k must be positive");
  }
  const std::uint64_t terms = bruteforce_terms(rho.dims(), k);
  if (terms > kBruteForceGuard) {
    throw SizeGuardError("shift_trace_bruteforce: " + std::to_string(terms) +
                         " index tuples exceed the guard");
  }
  const std::size_t db = rho.dims().b();
  const std::size_t d = rho.dims().total();
  const ComplexMatrix& m = rho.matrix();

  std::vector<unsigned> src_a(k), src_b(k);
  for (unsigned t = 0; t < k; ++t) {
    src_a[t] = static_cast<unsigned>(source_copy(alice, t, k));
    src_b[t] = static_cast<unsigned>(source_copy(bob, t, k));
  }

  // Odometer over the column index (i_t, j_t) of each copy; the row index of
  // copy t is (i_{src_a[t]}, j_{src_b[t]}).
  std::vector<std::size_t> col(k, 0);
  Complex total = 0.0;
  for (std::uint64_t n = 0; n < terms; ++n) {
    Complex term = 1.0;
    for (unsigned t = 0; t < k && term != Complex{}; ++t) {
      const std::size_t i_row = col[src_a[t]] / db;
      const std::size_t j_row = col[src_b[t]] % db;
      term *= m(i_row * db + j_row, col[t]);
    }
    total += term;
    for (unsigned t = k; t-- > 0;) {
      if (++col[t] < d) break;
      col[t] = 0;
    }
  }
  return total;
}

ComplexMatrix controlled_unitary(const ComplexMatrix& u) {
  if (!u.is_square()) {
    throw DimensionError("controlled_unitary: target gate is not square");
  }
  if (!is_unitary(u, 1e-9)) {
    throw PhysicalityError("controlled_unitary: target gate is not unitary");
  }
  const std::size_t n = u.rows();
  ComplexMatrix out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(n + i, n + j) = u(i, j);
  }
  return out;
}

}  // namespace pptlocc
