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

#include "pptlocc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pptlocc/errors.hpp"
#include "pptlocc/rng.hpp"

namespace pptlocc {

namespace {

using Root = std::complex<double>;

// Coefficients of the monic characteristic polynomial, highest degree first:
// x^d - e1 x^(d-1) + e2 x^(d-2) - ...
std::vector<double> monic_coefficients(std::span<const double> e) {
  std::vector<double> c(e.size());
  for (std::size_t m = 0; m < e.size(); ++m) c[m] = (m % 2 == 0 ? 1.0 : -1.0) * e[m];
  return c;
}

std::vector<Root> companion_roots(std::span<const double> coeffs) {
  const auto d = static_cast<Eigen::Index>(coeffs.size() - 1);
  if (d == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) companion(0, j) = -coeffs[static_cast<std::size_t>(j + 1)];
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EstimationTooNoisy("companion eigensolver did not converge");
  }
  std::vector<Root> roots(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

// Value and derivative by Horner's rule.
std::pair<Root, Root> evaluate(std::span<const double> coeffs, Root x) {
  Root value = coeffs[0];
  Root deriv = 0.0;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    deriv = deriv * x + value;
    value = value * x + coeffs[i];
  }
  return {value, deriv};
}

Root polish(std::span<const double> coeffs, Root x) {
  for (int iter = 0; iter < 8; ++iter) {
    const auto [value, deriv] = evaluate(coeffs, x);
    if (value == Root{} || deriv == Root{}) break;
    const Root next = x - value / deriv;
    if (std::abs(evaluate(coeffs, next).first) >= std::abs(value)) break;
    x = next;
  }
  return x;
}

// Coefficients of the `order`-th derivative, highest degree first.
std::vector<double> derivative(std::span<const double> coeffs, std::size_t order) {
  std::vector<double> out(coeffs.begin(), coeffs.end());
  for (std::size_t step = 0; step < order && out.size() > 1; ++step) {
    const std::size_t deg = out.size() - 1;
    std::vector<double> next(deg);
    for (std::size_t i = 0; i < deg; ++i) next[i] = out[i] * static_cast<double>(deg - i);
    out = std::move(next);
  }
  return out;
}

// Replaces groups of roots that look like one split multiple root by their
// centre and polishes the rest with Newton steps. The centre of an m-fold
// cluster is polished as a simple root of the (m-1)-th derivative. An m-fold root at c split by
// coefficient noise scatters around c with sum (r - c)^2 ~ 0, and its radius is
// bounded by the noise level relative to the distance to the other roots. A
// genuine neighbouring root breaks the second-moment cancellation.
std::vector<Root> group_roots(std::span<const double> coeffs, std::vector<Root> roots,
                              double perturbation_level) {
  const std::size_t n = roots.size();
  if (perturbation_level <= 0.0 || n < 2) {
    for (Root& r : roots) r = polish(coeffs, r);
    return roots;
  }
  constexpr double kMomentTolerance = 0.25;

  auto in = [](const std::vector<std::size_t>& set, std::size_t x) {
    return std::find(set.begin(), set.end(), x) != set.end();
  };
  auto centroid_of = [&](const std::vector<std::size_t>& members) {
    Root c = 0.0;
    for (std::size_t a : members) c += roots[a];
    return c / static_cast<double>(members.size());
  };
  auto looks_multiple = [&](const std::vector<std::size_t>& members) {
    const Root c = centroid_of(members);
    const double m = static_cast<double>(members.size());
    double diameter = 0.0;
    for (std::size_t a : members) {
      for (std::size_t b : members) diameter = std::max(diameter, std::abs(roots[a] - roots[b]));
    }
    const double reach = std::max(1.0, std::abs(c));
    double size = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      size += std::abs(coeffs[i]) * std::pow(reach, static_cast<double>(coeffs.size() - 1 - i));
    }
    double others = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in(members, j)) others *= std::abs(c - roots[j]);
    }
    if (others == 0.0 || diameter > 4.0 * std::pow(perturbation_level * size / others, 1.0 / m)) {
      return false;
    }
    if (members.size() == 2) return true;
    Root moment = 0.0;
    double magnitude = 0.0;
    for (std::size_t a : members) {
      const Root dev = (roots[a] - c) * (roots[a] - c);
      moment += dev;
      magnitude += std::abs(dev);
    }
    return std::abs(moment) <= kMomentTolerance * magnitude;
  };

  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<bool> merged(n, false);
  auto diameter_of = [&](const std::vector<std::size_t>& members) {
    double diameter = 0.0;
    for (std::size_t a : members) {
      for (std::size_t b : members) diameter = std::max(diameter, std::abs(roots[a] - roots[b]));
    }
    return diameter;
  };
  bool found = true;
  while (found && remaining.size() >= 2) {
    found = false;
    for (std::size_t m = remaining.size(); m >= 2 && !found; --m) {
      std::vector<std::size_t> best;
      for (std::size_t seed : remaining) {
        std::vector<std::size_t> near = remaining;
        std::sort(near.begin(), near.end(), [&](std::size_t x, std::size_t y) {
          return std::abs(roots[x] - roots[seed]) < std::abs(roots[y] - roots[seed]);
        });
        near.resize(m);
        if (looks_multiple(near) && (best.empty() || diameter_of(near) < diameter_of(best))) {
          best = std::move(near);
        }
      }
      if (best.empty()) continue;
      const Root c = polish(derivative(coeffs, best.size() - 1), centroid_of(best));
      for (std::size_t a : best) {
        roots[a] = c;
        merged[a] = true;
      }
      std::erase_if(remaining, [&](std::size_t x) { return merged[x]; });
      found = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!merged[i]) roots[i] = polish(coeffs, roots[i]);
  }
  return roots;
}

// Running absolute error bounds on the monic coefficients when each p_i carries
// relative error `level`.
std::vector<double> coefficient_errors(std::span<const double> p, std::span<const double> e,
                                       double level) {
  constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon();
  std::vector<double> err(e.size(), 0.0);
  for (std::size_t m = 1; m < e.size(); ++m) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
      const double dp = level * std::abs(p[i - 1]);
      acc += std::abs(e[m - i]) * dp + err[m - i] * std::abs(p[i - 1]) +
             kUnitRoundoff * std::abs(e[m - i] * p[i - 1]);
    }
    err[m] = acc / static_cast<double>(m);
  }
  return err;
}

double lambda_min_uncertainty(std::span<const double> coeffs, std::span<const double> errors,
                              const std::vector<Root>& roots) {
  const Root lambda = roots.back();
  const auto multiplicity = static_cast<std::size_t>(
      std::count(roots.begin(), roots.end(), lambda));
  const std::vector<double> fixed = derivative(coeffs, multiplicity - 1);
  const std::vector<double> fixed_err = derivative(errors, multiplicity - 1);
  double perturbation = 0.0;
  for (double c : fixed_err) perturbation = perturbation * std::abs(lambda) + c;
  const Root slope = evaluate(fixed, lambda).second;
  if (std::abs(slope) == 0.0) return std::numeric_limits<double>::infinity();
  return perturbation / std::abs(slope);
}

std::vector<std::uint64_t> multinomial(std::uint64_t shots, const std::array<double, 4>& probs,
                                       Rng& rng) {
  std::vector<std::uint64_t> counts(4, 0);
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (std::size_t i = 0; i < 3 && remaining > 0; ++i) {
    const double p = mass > 0.0 ? std::clamp(probs[i] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> binom(static_cast<std::int64_t>(remaining), p);
    const auto drawn = static_cast<std::uint64_t>(binom(rng));
    counts[i] = drawn;
    remaining -= drawn;
    mass -= probs[i];
  }
  counts[3] = remaining;
  return counts;
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

ShotCounts sample_shots(const OutcomeDistribution& dist, std::uint64_t shots, std::uint64_t seed,
                        MeasuredStage stage) {
  if (shots < 1) {
    throw std::invalid_argument("sample_shots: need at least one shot");
  }
  Rng rng(seed);
  const auto counts = multinomial(shots, dist.p, rng);
  ShotCounts out;
  out.k = dist.k;
  out.stage = stage;
  std::copy(counts.begin(), counts.end(), out.n.begin());
  return out;
}

EtaEstimate eta_from_counts(const ShotCounts& counts, double eta_scale) {
  const std::uint64_t total = counts.total();
  if (total == 0) {
    throw std::invalid_argument("eta_from_counts: no shots recorded");
  }
  const double signed_sum = static_cast<double>(counts.n[0]) - static_cast<double>(counts.n[1]) -
                            static_cast<double>(counts.n[2]) + static_cast<double>(counts.n[3]);
  const double mean = signed_sum / static_cast<double>(total);
  const double variance = std::max(0.0, 1.0 - mean * mean);
  return {eta_scale * mean, eta_scale * std::sqrt(variance / static_cast<double>(total))};
}

double eta_from_probabilities(const OutcomeDistribution& dist, double eta_scale) {
  return eta_scale * dist.alternating_sum();
}

CalibrationResult calibrate_eta_scale(const BipartiteDims& dims) {
  constexpr unsigned k = 2;
  if (full_evolution_dimension(dims, k) > kFullEvolutionGuard) {
    throw SizeGuardError("calibration needs the full-evolution oracle, which is infeasible for " +
                         std::to_string(dims.a()) + "x" + std::to_string(dims.b()));
  }
  const std::vector<std::pair<std::string, DensityMatrix>> states = {
      {"maximally_mixed", maximally_mixed(dims)},
      {"product_00", basis_product(dims, 0, 0)},
  };
  CalibrationResult result;
  double num = 0.0;
  double den = 0.0;
  for (const auto& [name, rho] : states) {
    CalibrationPoint point;
    point.state = name;
    point.exact_eta = power_sums_exact(rho).at(k);
    point.alternating_sum = stage_two_distribution(rho, k, EvaluationMode::FullEvolution).alternating_sum();
    num += point.alternating_sum * point.exact_eta;
    den += point.alternating_sum * point.alternating_sum;
    result.points.push_back(point);
  }
  if (den == 0.0) {
    throw CalibrationError("calibration states produced a vanishing alternating sum");
  }
  result.eta_scale = num / den;
  for (CalibrationPoint& point : result.points) {
    point.residual = std::abs(result.eta_scale * point.alternating_sum - point.exact_eta);
    result.max_residual = std::max(result.max_residual, point.residual);
  }
  if (result.max_residual >= kCalibrationTolerance) {
    throw CalibrationError("calibration states disagree on the eta scale (residual " +
                           std::to_string(result.max_residual) + ")");
  }
  return result;
}

PowerSums power_sums_exact(const DensityMatrix& rho, Subsystem transposed) {
  const ComplexMatrix pt = partial_transpose(rho, transposed);
  PowerSums ps;
  ps.d = rho.dimension();
  ps.source = PowerSumSource::Exact;
  ps.p.assign(ps.d, 0.0);
  ps.standard_errors.assign(ps.d, 0.0);
  ps.p[0] = 1.0;
  ComplexMatrix power = pt;
  for (std::size_t k = 2; k <= ps.d; ++k) {
    power = power * pt;
    const Complex t = power.trace();
    if (std::abs(t.imag()) > 1e-10) {
      throw Error("power_sums_exact: Tr[(rho^T)^" + std::to_string(k) +
                  "] has imaginary part " + std::to_string(t.imag()));
    }
    ps.p[k - 1] = t.real();
  }
  return ps;
}

void EstimationConfig::validate() const {
  if (shots_per_k < 1) throw std::invalid_argument("shots_per_k must be at least 1");
  if (!(eta_scale > 0.0)) throw std::invalid_argument("eta_scale must be positive");
  if (!(z >= 0.0)) throw std::invalid_argument("z must be non-negative");
  if (!(imag_cap > 0.0)) throw std::invalid_argument("imag_cap must be positive");
}

double eta_scale_for(MeasuredStage stage, const EstimationConfig& cfg) {
  return stage == MeasuredStage::StageOne ? 1.0 : cfg.eta_scale;
}

namespace {

std::pair<OutcomeDistribution, MeasuredStage> readout_for(const DensityMatrix& rho, unsigned k,
                                                          const EstimationConfig& cfg) {
  if (k == 2 && cfg.use_k2_shortcut) {
    return {stage_one_distribution(rho, k, EvaluationMode::Analytic), MeasuredStage::StageOne};
  }
  return {stage_two_distribution(rho, k, EvaluationMode::Analytic), MeasuredStage::StageTwo};
}

}  // namespace

std::vector<ShotCounts> collect_shots(const DensityMatrix& rho, const EstimationConfig& cfg) {
  cfg.validate();
  std::vector<ShotCounts> out;
  const auto d = static_cast<unsigned>(rho.dimension());
  for (unsigned k = 2; k <= d; ++k) {
    const auto [dist, stage] = readout_for(rho, k, cfg);
    out.push_back(sample_shots(dist, cfg.shots_per_k, derive_seed(cfg.seed, kSeedShots, k), stage));
  }
  return out;
}

PowerSums power_sums_from_counts(std::span<const ShotCounts> counts, const EstimationConfig& cfg) {
  PowerSums ps;
  ps.d = counts.size() + 1;
  ps.source = PowerSumSource::Estimated;
  ps.p.assign(ps.d, 0.0);
  ps.standard_errors.assign(ps.d, 0.0);
  ps.p[0] = 1.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].k != i + 2) {
      throw std::invalid_argument("power_sums_from_counts: counts must cover k = 2..d in order");
    }
    const EtaEstimate est = eta_from_counts(counts[i], eta_scale_for(counts[i].stage, cfg));
    ps.p[i + 1] = est.eta;
    ps.standard_errors[i + 1] = est.standard_error;
  }
  return ps;
}

PowerSums estimate_power_sums(const DensityMatrix& rho, const EstimationConfig& cfg) {
  const std::vector<ShotCounts> counts = collect_shots(rho, cfg);
  return power_sums_from_counts(counts, cfg);
}

PowerSums estimate_power_sums_exact_probabilities(const DensityMatrix& rho,
                                                  const EstimationConfig& cfg) {
  cfg.validate();
  PowerSums ps;
  ps.d = rho.dimension();
  ps.source = PowerSumSource::Estimated;
  ps.p.assign(ps.d, 0.0);
  ps.standard_errors.assign(ps.d, 0.0);
  ps.p[0] = 1.0;
  for (unsigned k = 2; k <= ps.d; ++k) {
    const auto [dist, stage] = readout_for(rho, k, cfg);
    ps.p[k - 1] = eta_from_probabilities(dist, eta_scale_for(stage, cfg));
  }
  return ps;
}

std::vector<double> elementary_symmetric(std::span<const double> power_sums) {
  const std::size_t d = power_sums.size();
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t m = 1; m <= d; ++m) {
    // m e_m = sum_{i=1}^m (-1)^(i-1) e_{m-i} p_i
    double acc = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
      const double term = e[m - i] * power_sums[i - 1];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[m] = acc / static_cast<double>(m);
  }
  return e;
}

Spectrum spectrum_from_power_sums(const PowerSums& ps, const RootCleanup& cleanup) {
  if (ps.p.size() != ps.d || ps.d == 0) {
    throw std::invalid_argument("spectrum_from_power_sums: need p_1..p_d");
  }
  const std::vector<double> e = elementary_symmetric(ps.p);
  const std::vector<double> coeffs = monic_coefficients(e);
  std::vector<Root> raw = companion_roots(coeffs);

  Spectrum spectrum;
  for (const Root& r : raw) spectrum.raw_imag = std::max(spectrum.raw_imag, std::abs(r.imag()));

  std::vector<Root> roots = group_roots(coeffs, std::move(raw), cleanup.perturbation_level);
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.real() > b.real(); });
  for (const Root& r : roots) spectrum.residual_imag = std::max(spectrum.residual_imag, std::abs(r.imag()));

  double checked = spectrum.residual_imag;
  if (cleanup.scope == RootCleanup::CapScope::LowestCluster) {
    // Split clusters far from lambda_min do not bias it; one that reaches it does.
    const Root lowest = roots.back();
    checked = std::abs(lowest.imag());
    for (const Root& r : roots) {
      if (std::abs(r.real() - lowest.real()) <= 2.0 * std::abs(r.imag())) {
        checked = std::max(checked, std::abs(r.imag()));
      }
    }
  }
  if (checked > cleanup.imag_cap) {
    throw EstimationTooNoisy("recovered root has imaginary part " + std::to_string(checked) +
                             " above the cap " + std::to_string(cleanup.imag_cap));
  }
  if (cleanup.perturbation_level > 0.0) {
    spectrum.lambda_min_uncertainty = lambda_min_uncertainty(
        coeffs, coefficient_errors(ps.p, e, cleanup.perturbation_level), roots);
  }
  spectrum.lambdas.reserve(roots.size());
  for (const Root& r : roots) spectrum.lambdas.push_back(r.real());
  return spectrum;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::NptEntangled: return "NPT_ENTANGLED";
    case Classification::PptConclusiveSeparable: return "PPT_CONCLUSIVE_SEPARABLE";
    case Classification::PptInconclusive: return "PPT_INCONCLUSIVE";
  }
  return "PPT_INCONCLUSIVE";
}

PptVerdict verdict(const Spectrum& spectrum, const BipartiteDims& dims, double sigma, double z) {
  PptVerdict v;
  v.lambda_min = spectrum.lambda_min();
  v.sigma = sigma;
  v.dims = dims;
  v.z = z;
  if (v.lambda_min + z * sigma < -kVerdictFloor) {
    v.classification = Classification::NptEntangled;
  } else if (dims.total() <= kPptSufficientDimension) {
    v.classification = Classification::PptConclusiveSeparable;
  } else {
    v.classification = Classification::PptInconclusive;
  }
  return v;
}

BootstrapResult bootstrap_lambda_min(std::span<const ShotCounts> counts_per_k,
                                     const EstimationConfig& cfg) {
  cfg.validate();
  if (cfg.bootstrap_replicas < 1) {
    throw std::invalid_argument("bootstrap_lambda_min: need at least one replica");
  }
  const RootCleanup cleanup = RootCleanup::shots(cfg.imag_cap);
  BootstrapResult result;
  result.replicas = cfg.bootstrap_replicas;
  std::vector<double> mins;
  mins.reserve(cfg.bootstrap_replicas);
  std::vector<ShotCounts> resampled(counts_per_k.begin(), counts_per_k.end());
  for (std::size_t r = 0; r < cfg.bootstrap_replicas; ++r) {
    for (std::size_t i = 0; i < counts_per_k.size(); ++i) {
      const ShotCounts& c = counts_per_k[i];
      const double total = static_cast<double>(c.total());
      std::array<double, 4> empirical{};
      for (std::size_t o = 0; o < 4; ++o) empirical[o] = static_cast<double>(c.n[o]) / total;
      Rng rng(derive_seed(cfg.seed, kSeedBootstrap, c.k, r));
      const auto drawn = multinomial(c.total(), empirical, rng);
      std::copy(drawn.begin(), drawn.end(), resampled[i].n.begin());
    }
    try {
      const PowerSums ps = power_sums_from_counts(resampled, cfg);
      mins.push_back(spectrum_from_power_sums(ps, cleanup).lambda_min());
    } catch (const EstimationTooNoisy&) {
      ++result.failures;
    }
  }
  if (static_cast<double>(result.failures) > 0.1 * static_cast<double>(result.replicas)) {
    throw EstimationTooNoisy(std::to_string(result.failures) + " of " +
                             std::to_string(result.replicas) +
                             " bootstrap replicas failed root recovery");
  }
  // Welford's update keeps identical replicas at exactly zero spread.
  double mean = 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < mins.size(); ++i) {
    const double delta = mins[i] - mean;
    mean += delta / static_cast<double>(i + 1);
    ss += delta * (mins[i] - mean);
  }
  result.sigma = mins.size() > 1 ? std::sqrt(ss / static_cast<double>(mins.size() - 1)) : 0.0;
  std::sort(mins.begin(), mins.end());
  result.lo = quantile(mins, 0.025);
  result.hi = quantile(mins, 0.975);
  return result;
}

}  // namespace pptlocc
