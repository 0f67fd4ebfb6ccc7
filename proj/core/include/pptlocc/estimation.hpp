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

#ifndef PPTLOCC_ESTIMATION_HPP
#define PPTLOCC_ESTIMATION_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pptlocc/linalg.hpp"
#include "pptlocc/network.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc {

/// Which ancilla pair was read out.
enum class MeasuredStage { StageOne, StageTwo };

struct ShotCounts {
  unsigned k = 0;
  MeasuredStage stage = MeasuredStage::StageTwo;
  std::array<std::uint64_t, 4> n{};  // n00, n01, n10, n11

  std::uint64_t total() const noexcept { return n[0] + n[1] + n[2] + n[3]; }
};

/// Multinomial draw of `shots` outcomes. Deterministic for a fixed seed.
ShotCounts sample_shots(const OutcomeDistribution& dist, std::uint64_t shots, std::uint64_t seed,
                        MeasuredStage stage = MeasuredStage::StageTwo);

struct EtaEstimate {
  double eta = 0.0;
  double standard_error = 0.0;
};

/// eta = scale * (n00 - n01 - n10 + n11) / total, with the binomial standard
/// error of the +-1 valued alternating outcome. Throws std::invalid_argument
/// on zero total.
EtaEstimate eta_from_counts(const ShotCounts& counts, double eta_scale);
/// Infinite-shot limit of eta_from_counts.
double eta_from_probabilities(const OutcomeDistribution& dist, double eta_scale);

/// Ratio between Tr[(rho^{T_B})^k] and the stage-two alternating sum, as
/// measured by calibrate_eta_scale on the full circuit.
inline constexpr double kCalibratedEtaScale = 2.0;

struct CalibrationPoint {
  std::string state;
  double exact_eta = 0.0;
  double alternating_sum = 0.0;
  double residual = 0.0;  // |scale * alternating_sum - exact_eta|
};

struct CalibrationResult {
  double eta_scale = 0.0;
  double max_residual = 0.0;
  std::vector<CalibrationPoint> points;
};

inline constexpr double kCalibrationTolerance = 1e-9;

/// Fits the eta scale by running the full-evolution stage-two circuit at k = 2
/// on the maximally mixed state and on |00>. Throws SizeGuardError when the
/// oracle is infeasible for `dims` and CalibrationError when the two states
/// disagree beyond kCalibrationTolerance.
CalibrationResult calibrate_eta_scale(const BipartiteDims& dims);

enum class PowerSumSource { Exact, Estimated };

/// p_k = Tr[(rho^{T_B})^k] for k = 1..d. Index 0 holds p_1.
struct PowerSums {
  std::size_t d = 0;
  std::vector<double> p;
  PowerSumSource source = PowerSumSource::Exact;
  /// Same length as p; zero for p_1 and for exact sources.
  std::vector<double> standard_errors;

  double at(unsigned k) const { return p.at(k - 1); }
};

/// p_1 = 1 and p_k from matrix powers of the chosen partial transpose.
PowerSums power_sums_exact(const DensityMatrix& rho, Subsystem transposed = Subsystem::B);

struct EstimationConfig {
  std::uint64_t shots_per_k = 100'000;
  std::uint64_t seed = 0;
  std::size_t bootstrap_replicas = 200;
  double z = 3.0;
  double eta_scale = kCalibratedEtaScale;
  bool use_k2_shortcut = true;
  /// Imaginary-part cap applied to the lowest recovered root in shot mode.
  double imag_cap = 0.05;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Scale that turns the alternating sum of a stage into eta (stage one needs none).
double eta_scale_for(MeasuredStage stage, const EstimationConfig& cfg);

/// Draws shot counts for k = 2..d. k = 2 uses the stage-one readout when the
/// shortcut is enabled. Each k uses its own substream of cfg.seed.
std::vector<ShotCounts> collect_shots(const DensityMatrix& rho, const EstimationConfig& cfg);

/// p_1 = 1 and p_k from each ShotCounts (which must cover k = 2..d in order).
PowerSums power_sums_from_counts(std::span<const ShotCounts> counts, const EstimationConfig& cfg);

/// collect_shots followed by power_sums_from_counts.
PowerSums estimate_power_sums(const DensityMatrix& rho, const EstimationConfig& cfg);

/// The infinite-shot limit: exact analytic outcome probabilities fed to the
/// same estimator.
PowerSums estimate_power_sums_exact_probabilities(const DensityMatrix& rho,
                                                  const EstimationConfig& cfg);

/// How recovered roots are turned into real eigenvalues.
struct RootCleanup {
  /// LowestCluster caps lambda_min and every root whose imaginary part is at
  /// least half its real distance from lambda_min, i.e. the roots a split
  /// multiple root at lambda_min would produce.
  enum class CapScope { AllRoots, LowestCluster };

  /// Largest |Im| tolerated after cleanup.
  double imag_cap = 1e-6;
  /// Assumed relative noise of the power sums. Clusters of roots consistent
  /// with one multiple root split by this noise are merged, and the noise is
  /// propagated into Spectrum::lambda_min_uncertainty. Zero disables both.
  double perturbation_level = 1e-15;
  CapScope scope = CapScope::AllRoots;

  static RootCleanup exact() { return {}; }
  static RootCleanup shots(double cap) { return {cap, 0.0, CapScope::LowestCluster}; }
};

struct Spectrum {
  /// Descending.
  std::vector<double> lambdas;
  /// Largest |Im| discarded after grouping.
  double residual_imag = 0.0;
  /// Largest |Im| among the raw polynomial roots.
  double raw_imag = 0.0;
  /// First-order bound on the error of lambda_min caused by the assumed
  /// relative noise in the power sums; 0 when no noise level is assumed.
  double lambda_min_uncertainty = 0.0;

  double lambda_min() const { return lambdas.back(); }
};

/// Elementary symmetric polynomials e_0..e_d from power sums p_1..p_d.
std::vector<double> elementary_symmetric(std::span<const double> power_sums);

/// Newton's identities, then the roots of the characteristic polynomial via
/// its companion matrix. Throws EstimationTooNoisy when an imaginary part in
/// scope exceeds the cap.
Spectrum spectrum_from_power_sums(const PowerSums& ps, const RootCleanup& cleanup = RootCleanup::exact());

enum class Classification { NptEntangled, PptConclusiveSeparable, PptInconclusive };

std::string to_string(Classification c);

struct PptVerdict {
  double lambda_min = 0.0;
  double sigma = 0.0;
  Classification classification = Classification::PptInconclusive;
  BipartiteDims dims{2, 2};
  double z = 3.0;
};

/// Largest d_A d_B for which PPT implies separability (2x2 and 2x3).
inline constexpr std::size_t kPptSufficientDimension = 6;

/// Negative eigenvalues no larger in magnitude than this are treated as roundoff.
inline constexpr double kVerdictFloor = 1e-12;

/// NPT if lambda_min + z sigma < -kVerdictFloor; otherwise conclusive only when
/// d_A d_B <= 6.
PptVerdict verdict(const Spectrum& spectrum, const BipartiteDims& dims, double sigma, double z);

struct BootstrapResult {
  double sigma = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t replicas = 0;
  std::size_t failures = 0;
};

/// Resamples every ShotCounts multinomially cfg.bootstrap_replicas times and
/// reruns the estimator. Returns the standard deviation and the central 95%
/// interval of lambda_min. Throws EstimationTooNoisy if more than 10% of the
/// replicas fail root recovery.
BootstrapResult bootstrap_lambda_min(std::span<const ShotCounts> counts_per_k,
                                     const EstimationConfig& cfg);

}  // namespace pptlocc

#endif  // PPTLOCC_ESTIMATION_HPP
