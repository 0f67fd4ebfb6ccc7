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

#ifndef PPTLOCC_PIPELINE_HPP
#define PPTLOCC_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pptlocc/estimation.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc {

enum class Method { Exact, LoccExact, LoccShots };

std::string to_string(Method m);

struct PipelineResult {
  Method method = Method::Exact;
  BipartiteDims dims{2, 2};
  PowerSums power_sums;
  /// Empty when root recovery failed.
  Spectrum spectrum;
  std::optional<PptVerdict> verdict;
  std::vector<ShotCounts> counts;
  std::optional<BootstrapResult> bootstrap;
  std::uint64_t shots_per_k = 0;
  std::uint64_t seed = 0;
  double eta_scale = kCalibratedEtaScale;
  std::uint64_t copies_consumed = 0;
  /// Set when the estimator gave up; the other fields hold what was computed.
  std::optional<std::string> failure;

  /// Number of measured functionals, k = 2..d.
  std::size_t estimated_functionals() const noexcept {
    return power_sums.d == 0 ? 0 : power_sums.d - 1;
  }
};

/// Each shot of the k-copy circuit consumes k copies: shots * (2 + 3 + ... + d).
std::uint64_t copies_consumed(std::size_t d, std::uint64_t shots_per_k);

/// Direct route: partial transpose, Hermitian eigensolve, verdict with sigma 0.
PipelineResult run_exact_check(const DensityMatrix& rho, double z = 3.0);

/// The two-party protocol. With exact_probabilities the analytic outcome
/// probabilities stand in for infinitely many shots; otherwise shots are
/// sampled and sigma comes from the bootstrap (0 when no replicas requested).
PipelineResult run_locc(const DensityMatrix& rho, const EstimationConfig& cfg,
                        bool exact_probabilities);

}  // namespace pptlocc

#endif  // PPTLOCC_PIPELINE_HPP
