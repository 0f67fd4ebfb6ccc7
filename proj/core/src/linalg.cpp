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

#include "pptlocc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "pptlocc/errors.hpp"

namespace pptlocc {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
}

void require_bipartite_size(const ComplexMatrix& rho, const BipartiteDims& dims) {
  if (!rho.is_square() || rho.rows() != dims.total()) {
    throw DimensionError("matrix is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + " but dims declare " +
                         std::to_string(dims.a()) + "x" + std::to_string(dims.b()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix entry count " + std::to_string(entries_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DimensionError("matrix entry is not finite");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionError("ragged matrix initializer");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner sizes " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

double hermiticity_deviation(const ComplexMatrix& a) {
  require_square(a, "hermiticity_deviation");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return m;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.is_square()) return false;
  return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows())) <= tol;
}

BipartiteDims::BipartiteDims(std::size_t d_a, std::size_t d_b) : d_a_(d_a), d_b_(d_b) {
  if (d_a < 2 || d_b < 2) {
    throw DimensionError("local dimensions must be at least 2, got " + std::to_string(d_a) +
                         " and " + std::to_string(d_b));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows();
  const std::size_t cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < rb; ++k) {
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("kron_all: no factors");
  }
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix mat_power(const ComplexMatrix& a, unsigned k) {
  require_square(a, "mat_power");
  if (k == 0) {
    throw std::invalid_argument("mat_power: exponent must be positive");
  }
  ComplexMatrix out = a;
  for (unsigned i = 1; i < k; ++i) out = out * a;
  return out;
}

Complex trace_of_power(const ComplexMatrix& a, unsigned k) {
  if (k == 1) return a.trace();
  // Tr(a^k) = sum_ij (a^(k-1))_ij a_ji saves the last product.
  const ComplexMatrix partial = mat_power(a, k - 1);
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t += partial(i, j) * a(j, i);
  }
  return t;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteDims& dims,
                                Subsystem which) {
  require_bipartite_size(rho, dims);
  const std::size_t da = dims.a();
  const std::size_t db = dims.b();
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      for (std::size_t m = 0; m < da; ++m) {
        for (std::size_t n = 0; n < db; ++n) {
          const std::size_t row = i * db + j;
          const std::size_t col = m * db + n;
          if (which == Subsystem::B) {
            out(row, col) = rho(i * db + n, m * db + j);
          } else {
            out(row, col) = rho(m * db + j, i * db + n);
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> factor_dims,
                            std::span<const std::size_t> keep) {
  std::size_t total = 1;
  for (std::size_t d : factor_dims) {
    if (d == 0) throw DimensionError("partial_trace: zero factor dimension");
    total *= d;
  }
  if (!rho.is_square() || rho.rows() != total) {
    throw DimensionError("partial_trace: matrix size " + std::to_string(rho.rows()) +
                         " does not match product of factor dimensions " + std::to_string(total));
  }
  const std::size_t n = factor_dims.size();
  std::vector<bool> kept(n, false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n || (i > 0 && keep[i] <= keep[i - 1])) {
      throw DimensionError("partial_trace: keep list must be strictly increasing factor indices");
    }
    kept[keep[i]] = true;
  }

  std::vector<std::size_t> stride(n);
  std::size_t s = 1;
  for (std::size_t f = n; f-- > 0;) {
    stride[f] = s;
    s *= factor_dims[f];
  }

  // Offsets of every kept multi-index and every traced multi-index inside the
  // full register; a full index is kept_offset + traced_offset.
  auto offsets_over = [&](bool want_kept) {
    std::vector<std::size_t> offs{0};
    for (std::size_t f = 0; f < n; ++f) {
      if (kept[f] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(offs.size() * factor_dims[f]);
      for (std::size_t base : offs) {
        for (std::size_t digit = 0; digit < factor_dims[f]; ++digit) {
          next.push_back(base + digit * stride[f]);
        }
      }
      offs = std::move(next);
    }
    return offs;
  };
  const std::vector<std::size_t> kept_offs = offsets_over(true);
  const std::vector<std::size_t> traced_offs = offsets_over(false);

  ComplexMatrix out(kept_offs.size(), kept_offs.size());
  for (std::size_t r = 0; r < kept_offs.size(); ++r) {
    for (std::size_t c = 0; c < kept_offs.size(); ++c) {
      Complex acc = 0.0;
      for (std::size_t t : traced_offs) acc += rho(kept_offs[r] + t, kept_offs[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const BipartiteDims& dims, Subsystem keep) {
  const std::size_t factors[] = {dims.a(), dims.b()};
  const std::size_t kept[] = {keep == Subsystem::A ? std::size_t{0} : std::size_t{1}};
  return partial_trace(rho, factors, kept);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol) {
  require_square(a, "hermitian_eigenvalues");
  const double dev = hermiticity_deviation(a);
  if (dev > tol) {
    throw PhysicalityError("hermitian_eigenvalues: matrix deviates from Hermitian by " +
                           std::to_string(dev));
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Symmetrize so the solver sees an exactly Hermitian input.
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      m(i, j) = 0.5 * (a(ui, uj) + std::conj(a(uj, ui)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigenvalues: eigensolver did not converge");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

}  // namespace pptlocc
