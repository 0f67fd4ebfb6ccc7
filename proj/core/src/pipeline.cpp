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

#include "pptlocc/pipeline.hpp"

#include "pptlocc/errors.hpp"

namespace pptlocc {

std::string to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::LoccExact: return "locc_exact";
    case Method::LoccShots: return "locc_shots";
  }
  return "exact";
}

std::uint64_t copies_consumed(std::size_t d, std::uint64_t shots_per_k) {
  std::uint64_t per_shot_total = 0;
  for (std::size_t k = 2; k <= d; ++k) per_shot_total += k;
  return per_shot_total * shots_per_k;
}

PipelineResult run_exact_check(const DensityMatrix& rho, double z) {
  PipelineResult result;
  result.method = Method::Exact;
  result.dims = rho.dims();
  result.power_sums = power_sums_exact(rho);
  result.spectrum.lambdas = hermitian_eigenvalues(partial_transpose(rho, Subsystem::B));
  result.verdict = verdict(result.spectrum, rho.dims(), 0.0, z);
  return result;
}

PipelineResult run_locc(const DensityMatrix& rho, const EstimationConfig& cfg,
                        bool exact_probabilities) {
  cfg.validate();
  PipelineResult result;
  result.dims = rho.dims();
  result.seed = cfg.seed;
  result.eta_scale = cfg.eta_scale;
  if (exact_probabilities) {
    result.method = Method::LoccExact;
    result.power_sums = estimate_power_sums_exact_probabilities(rho, cfg);
    try {
      result.spectrum = spectrum_from_power_sums(result.power_sums, RootCleanup::exact());
      result.verdict =
          verdict(result.spectrum, rho.dims(), result.spectrum.lambda_min_uncertainty, cfg.z);
    } catch (const EstimationTooNoisy& e) {
      result.failure = e.what();
    }
    return result;
  }

  result.method = Method::LoccShots;
  result.shots_per_k = cfg.shots_per_k;
  result.copies_consumed = copies_consumed(rho.dimension(), cfg.shots_per_k);
  result.counts = collect_shots(rho, cfg);
  result.power_sums = power_sums_from_counts(result.counts, cfg);
  try {
    result.spectrum = spectrum_from_power_sums(result.power_sums, RootCleanup::shots(cfg.imag_cap));
    double sigma = 0.0;
    if (cfg.bootstrap_replicas > 0) {
      result.bootstrap = bootstrap_lambda_min(result.counts, cfg);
      sigma = result.bootstrap->sigma;
    }
    result.verdict = verdict(result.spectrum, rho.dims(), sigma, cfg.z);
  } catch (const EstimationTooNoisy& e) {
    result.failure = e.what();
  }
  return result;
}

}  // namespace pptlocc
