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

#ifndef PPTLOCC_STATES_HPP
#define PPTLOCC_STATES_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pptlocc/linalg.hpp"

namespace pptlocc {

struct ValidationReport {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double tol = kDefaultHermitianTol;

  bool hermitian() const noexcept { return hermiticity_deviation <= tol; }
  bool unit_trace() const noexcept { return trace_deviation <= tol; }
  bool positive() const noexcept { return min_eigenvalue >= -tol; }
  bool passed() const noexcept { return hermitian() && unit_trace() && positive(); }
  /// One-line human summary.
  std::string summary() const;
};

/// Checks physicality of `matrix` as a state on `dims`. Throws DimensionError
/// (not a failed report) when the matrix size does not match the dims.
ValidationReport validate(const BipartiteDims& dims, const ComplexMatrix& matrix,
                          double tol = kDefaultHermitianTol);

/// A validated bipartite density matrix.
class DensityMatrix {
 public:
  /// Throws DimensionError on a size mismatch and PhysicalityError when
  /// validation fails.
  DensityMatrix(BipartiteDims dims, ComplexMatrix matrix, double tol = kDefaultHermitianTol);

  const BipartiteDims& dims() const noexcept { return dims_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return dims_.total(); }

 private:
  BipartiteDims dims_;
  ComplexMatrix matrix_;
};

ValidationReport validate(const DensityMatrix& rho, double tol = kDefaultHermitianTol);

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
  return partial_transpose(rho.matrix(), rho.dims(), which);
}
inline ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  return partial_trace(rho.matrix(), rho.dims(), keep);
}
/// Smallest eigenvalue of rho^{T_B}.
double min_partial_transpose_eigenvalue(const DensityMatrix& rho);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Parses "phi+", "phi-", "psi+", "psi-".
BellKind parse_bell_kind(const std::string& name);

DensityMatrix bell_state(BellKind which);
/// p |Psi-><Psi-| + (1 - p) I/4; throws std::invalid_argument outside [0, 1].
DensityMatrix werner(double p);
DensityMatrix maximally_mixed(const BipartiteDims& dims);
/// |i j><i j|.
DensityMatrix basis_product(const BipartiteDims& dims, std::size_t i, std::size_t j);
/// A tensor product of two local states.
DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

/// G G^dag / Tr(G G^dag) for a complex Ginibre matrix G from the seeded stream.
DensityMatrix random_density(const BipartiteDims& dims, std::uint64_t seed);
/// sum_t q_t |a_t><a_t| (x) |b_t><b_t| with random pure local states and
/// simplex weights q.
DensityMatrix random_separable(const BipartiteDims& dims, std::size_t terms, std::uint64_t seed);
/// (1 - q) rho + q I/d.
DensityMatrix depolarize(const DensityMatrix& rho, double q);

/// Serialized form: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}.
std::string to_json(const DensityMatrix& rho);
/// Throws FormatError, DimensionError or PhysicalityError.
DensityMatrix density_from_json(const std::string& text, double tol = kDefaultHermitianTol);

void save(const DensityMatrix& rho, const std::filesystem::path& path);
DensityMatrix load(const std::filesystem::path& path, double tol = kDefaultHermitianTol);

}  // namespace pptlocc

#endif  // PPTLOCC_STATES_HPP
