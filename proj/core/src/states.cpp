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

#include "pptlocc/states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pptlocc/errors.hpp"
#include "pptlocc/rng.hpp"

namespace pptlocc {

namespace {

using nlohmann::json;

std::vector<Complex> random_gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(n);
  for (Complex& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return v;
}

ComplexMatrix random_pure_projector(std::size_t n, Rng& rng) {
  std::vector<Complex> v = random_gaussian_vector(n, rng);
  double norm2 = 0.0;
  for (const Complex& z : v) norm2 += std::norm(z);
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& z : v) z *= scale;
  return ComplexMatrix::outer(v);
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (passed() ? "valid" : "INVALID") << " state: hermiticity deviation "
     << hermiticity_deviation << ", trace deviation " << trace_deviation
     << ", min eigenvalue " << min_eigenvalue << " (tol " << tol << ")";
  return os.str();
}

ValidationReport validate(const BipartiteDims& dims, const ComplexMatrix& matrix, double tol) {
  if (!matrix.is_square() || matrix.rows() != dims.total()) {
    throw DimensionError("state matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + " but dims are " +
                         std::to_string(dims.a()) + "x" + std::to_string(dims.b()));
  }
  ValidationReport report;
  report.tol = tol;
  report.hermiticity_deviation = hermiticity_deviation(matrix);
  report.trace_deviation = std::abs(matrix.trace() - Complex(1.0));
  // The eigensolver symmetrizes, so the eigenvalue check is meaningful even for
  // slightly non-Hermitian input; use a loose gate to avoid masking the report.
  const auto eig = hermitian_eigenvalues(matrix, std::max(tol, report.hermiticity_deviation));
  report.min_eigenvalue = eig.back();
  return report;
}

ValidationReport validate(const DensityMatrix& rho, double tol) {
  return validate(rho.dims(), rho.matrix(), tol);
}

DensityMatrix::DensityMatrix(BipartiteDims dims, ComplexMatrix matrix, double tol)
    : dims_(dims), matrix_(std::move(matrix)) {
  const ValidationReport report = validate(dims_, matrix_, tol);
  if (!report.passed()) {
    throw PhysicalityError(report.summary());
  }
}

double min_partial_transpose_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose(rho, Subsystem::B)).back();
}

BellKind parse_bell_kind(const std::string& name) {
  if (name == "phi+") return BellKind::PhiPlus;
  if (name == "phi-") return BellKind::PhiMinus;
  if (name == "psi+") return BellKind::PsiPlus;
  if (name == "psi-") return BellKind::PsiMinus;
  throw std::invalid_argument("unknown Bell state '" + name + "' (expected phi+, phi-, psi+, psi-)");
}

DensityMatrix bell_state(BellKind which) {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Complex> v(4, 0.0);
  switch (which) {
    case BellKind::PhiPlus: v[0] = h; v[3] = h; break;
    case BellKind::PhiMinus: v[0] = h; v[3] = -h; break;
    case BellKind::PsiPlus: v[1] = h; v[2] = h; break;
    case BellKind::PsiMinus: v[1] = h; v[2] = -h; break;
  }
  return DensityMatrix(BipartiteDims(2, 2), ComplexMatrix::outer(v));
}

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("werner: p must lie in [0, 1]");
  }
  ComplexMatrix m = bell_state(BellKind::PsiMinus).matrix() * Complex(p);
  m += ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0);
  return DensityMatrix(BipartiteDims(2, 2), std::move(m));
}

DensityMatrix maximally_mixed(const BipartiteDims& dims) {
  const double d = static_cast<double>(dims.total());
  return DensityMatrix(dims, ComplexMatrix::identity(dims.total()) * Complex(1.0 / d));
}

DensityMatrix basis_product(const BipartiteDims& dims, std::size_t i, std::size_t j) {
  if (i >= dims.a() || j >= dims.b()) {
    throw DimensionError("basis_product: index out of range");
  }
  ComplexMatrix m(dims.total(), dims.total());
  m(i * dims.b() + j, i * dims.b() + j) = 1.0;
  return DensityMatrix(dims, std::move(m));
}

DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  return DensityMatrix(BipartiteDims(rho_a.rows(), rho_b.rows()), kron(rho_a, rho_b));
}

DensityMatrix random_density(const BipartiteDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = dims.total();
  ComplexMatrix g(d, d, random_gaussian_vector(d * d, rng));
  ComplexMatrix m = g * g.adjoint();
  const double t = m.trace().real();
  m *= Complex(1.0 / t);
  // Remove rounding asymmetry so the stored matrix is exactly Hermitian.
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix(dims, std::move(m));
}

DensityMatrix random_separable(const BipartiteDims& dims, std::size_t terms, std::uint64_t seed) {
  if (terms == 0) {
    throw std::invalid_argument("random_separable: need at least one term");
  }
  Rng rng(seed);
  // Uniform simplex weights from normalized exponentials.
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) {
    w = expo(rng);
    total += w;
  }
  ComplexMatrix m(dims.total(), dims.total());
  for (std::size_t t = 0; t < terms; ++t) {
    const ComplexMatrix a = random_pure_projector(dims.a(), rng);
    const ComplexMatrix b = random_pure_projector(dims.b(), rng);
    m += kron(a, b) * Complex(weights[t] / total);
  }
  return DensityMatrix(dims, std::move(m));
}

DensityMatrix depolarize(const DensityMatrix& rho, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("depolarize: q must lie in [0, 1]");
  }
  const double d = static_cast<double>(rho.dimension());
  ComplexMatrix m = rho.matrix() * Complex(1.0 - q);
  m += ComplexMatrix::identity(rho.dimension()) * Complex(q / d);
  return DensityMatrix(rho.dims(), std::move(m));
}

std::string to_json(const DensityMatrix& rho) {
  json rows = json::array();
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  json doc;
  doc["dims"] = {rho.dims().a(), rho.dims().b()};
  doc["matrix"] = std::move(rows);
  return doc.dump();
}

DensityMatrix density_from_json(const std::string& text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  try {
    const auto& dims_node = doc.at("dims");
    if (!dims_node.is_array() || dims_node.size() != 2) {
      throw FormatError("\"dims\" must be a two-element array");
    }
    const BipartiteDims dims(dims_node[0].get<std::size_t>(), dims_node[1].get<std::size_t>());
    const auto& rows = doc.at("matrix");
    if (!rows.is_array() || rows.empty()) {
      throw FormatError("\"matrix\" must be a non-empty array of rows");
    }
    const std::size_t n = rows.size();
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) {
        throw FormatError("\"matrix\" must be square");
      }
      for (const auto& pair : row) {
        if (!pair.is_array() || pair.size() != 2) {
          throw FormatError("matrix entries must be [re, im] pairs");
        }
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
      }
    }
    return DensityMatrix(dims, ComplexMatrix(n, n, std::move(entries)), tol);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed state file: ") + e.what());
  }
}

void save(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  out << to_json(rho) << '\n';
  if (!out) {
    throw Error("failed writing '" + path.string() + "'");
  }
}

DensityMatrix load(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return density_from_json(buffer.str(), tol);
}

}  // namespace pptlocc
