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

#ifndef PPTLOCC_IDENTITY_SUITE_HPP
#define PPTLOCC_IDENTITY_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pptlocc/linalg.hpp"

namespace pptlocc {

/// Names of the identities checked by run_identity_suite.
namespace identity {
inline constexpr const char* kTransposeB = "shift_trace_equals_TB_power";       // V_A^dag (x) V_B
inline constexpr const char* kTransposeA = "shift_trace_equals_TA_power";       // V_A (x) V_B^dag
inline constexpr const char* kConjugate = "shift_traces_conjugate_and_real";  // mu5 = 0
inline constexpr const char* kReducedTraces = "shift_trace_reduced_powers";     // Tr rho_A^k etc.
inline constexpr const char* kShiftProduct = "shift_matrix_trace_of_product";   // Tr V (m1..mk)
inline constexpr const char* kMuRoutes = "mu_analytic_equals_shift_traces";
inline constexpr const char* kPurity = "k2_TB_power_equals_purity";
inline constexpr const char* kSpectralEquality = "TA_TB_power_sums_equal";
}  // namespace identity

struct IdentityCheck {
  std::string identity;
  unsigned k = 0;
  std::size_t trial = 0;
  double deviation = 0.0;
  bool skipped = false;
  std::string note;
};

struct IdentitySuiteReport {
  std::size_t d_a = 2;
  std::size_t d_b = 2;
  unsigned kmax = 2;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  std::size_t skipped() const;
  std::size_t executed() const;
  /// Largest deviation of one identity over all executed (k, trial) pairs.
  double max_deviation(const std::string& name) const;
  /// Largest deviation over everything executed.
  double max_deviation() const;
};

/// For `trials` seeded random states on `dims` and k = 2..kmax, compares the
/// brute-force shift traces, matrix-power traces and partial-transpose power
/// traces pairwise. Checks that exceed a size guard are recorded as skipped.
IdentitySuiteReport run_identity_suite(const BipartiteDims& dims, unsigned kmax,
                                       std::size_t trials, std::uint64_t seed,
                                       double tol = 1e-10);

/// Human-readable table of per-identity maxima.
std::string format_identity_table(const IdentitySuiteReport& report);
/// JSON form of the full check list.
std::string identity_report_json(const IdentitySuiteReport& report);

}  // namespace pptlocc

#endif  // PPTLOCC_IDENTITY_SUITE_HPP
