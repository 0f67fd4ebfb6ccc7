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

#ifndef PPTLOCC_REPORT_HPP
#define PPTLOCC_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pptlocc/estimation.hpp"
#include "pptlocc/pipeline.hpp"

namespace pptlocc {

/// Library version string embedded in reports.
std::string tool_version();

/// Machine-readable result of a check or simulation. Power sums list only the
/// measured functionals k = 2..d (p_1 = 1 is known a priori).
struct Report {
  std::size_t d_a = 2;
  std::size_t d_b = 2;
  Method method = Method::Exact;
  std::vector<double> power_sums;
  std::vector<double> power_sum_stderr;
  std::vector<double> spectrum;
  std::optional<double> lambda_min;
  double sigma = 0.0;
  std::optional<Classification> classification;
  std::uint64_t shots_per_k = 0;
  std::uint64_t seed = 0;
  double eta_scale = kCalibratedEtaScale;
  std::uint64_t copies_consumed = 0;
  std::string tool_version;
};

Report make_report(const PipelineResult& result);

/// Serializes with exactly the fields
/// dims, method, power_sums, power_sum_stderr, spectrum, lambda_min, sigma,
/// classification, shots_per_k, seed, eta_scale, copies_consumed, tool_version.
/// Missing values are written as null.
std::string to_json(const Report& report, int indent = -1);
/// Throws FormatError on a missing, unknown or mistyped field.
Report report_from_json(const std::string& text);

Classification parse_classification(const std::string& text);
Method parse_method(const std::string& text);

/// True when the classification follows from lambda_min, sigma, z and dims.
bool classification_consistent(const Report& report, double z);

}  // namespace pptlocc

#endif  // PPTLOCC_REPORT_HPP
