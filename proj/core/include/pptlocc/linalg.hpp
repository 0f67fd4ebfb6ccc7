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

#ifndef PPTLOCC_LINALG_HPP
#define PPTLOCC_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pptlocc {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. All entries are finite.
class ComplexMatrix {
 public:
  /// Empty 0x0 matrix; only useful as a placeholder.
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of `entries`; throws DimensionError if the length is
  /// not rows*cols or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
/// Matrix product; throws DimensionError on inner-size mismatch.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest |a(i,j) - b(i,j)|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest |a(i,j) - conj(a(j,i))|.
double hermiticity_deviation(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-9);

/// Local dimensions of a two-party system. The composite index of |i j> is
/// i * d_B + j.
class BipartiteDims {
 public:
  /// Throws DimensionError unless both dimensions are at least 2.
  BipartiteDims(std::size_t d_a, std::size_t d_b);

  std::size_t a() const noexcept { return d_a_; }
  std::size_t b() const noexcept { return d_b_; }
  std::size_t total() const noexcept { return d_a_ * d_b_; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  std::size_t d_a_;
  std::size_t d_b_;
};

enum class Subsystem { A, B };

inline constexpr double kDefaultHermitianTol = 1e-9;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Kronecker product of a list of factors, left to right.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/// k-fold product a*a*...*a. Throws DimensionError for non-square input and
/// std::invalid_argument for k == 0.
ComplexMatrix mat_power(const ComplexMatrix& a, unsigned k);
/// Tr(a^k) without keeping intermediate powers around longer than needed.
Complex trace_of_power(const ComplexMatrix& a, unsigned k);

/// Transposes the indices of one party. For B the entry at (i d_B + j, m d_B + n)
/// becomes the entry at (i d_B + n, m d_B + j). Pure index permutation.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteDims& dims,
                                Subsystem which);

/// Traces out every tensor factor not listed in `keep`. `factor_dims` lists the
/// factor dimensions with the first factor most significant; `keep` must be
/// strictly increasing.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> factor_dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const BipartiteDims& dims, Subsystem keep);

/// Eigenvalues of a Hermitian matrix in descending order. Throws
/// PhysicalityError if the matrix deviates from Hermitian by more than tol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a,
                                          double tol = kDefaultHermitianTol);

}  // namespace pptlocc

#endif  // PPTLOCC_LINALG_HPP
