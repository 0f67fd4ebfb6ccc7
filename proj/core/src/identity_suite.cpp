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

#include "pptlocc/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pptlocc/network.hpp"
#include "pptlocc/permnet.hpp"
#include "pptlocc/rng.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc {

namespace {

ComplexMatrix random_complex_matrix(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> entries(n * n);
  for (Complex& z : entries) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return ComplexMatrix(n, n, std::move(entries));
}

// Tr[V_k (m_1 (x) ... (x) m_k)] = Tr(m_k ... m_1) and
// Tr[V_k^dag (m_1 (x) ... (x) m_k)] = Tr(m_1 ... m_k) for random non-Hermitian
// local matrices; returns the larger deviation relative to the traces.
double shift_product_deviation(std::size_t d, unsigned k, Rng& rng) {
  std::vector<ComplexMatrix> factors;
  for (unsigned t = 0; t < k; ++t) factors.push_back(random_complex_matrix(d, rng));
  // Tr(P T) = sum_x T(x, P[x]) for a permutation matrix with entries (P[x], x);
  // entries of the tensor product are formed digit by digit.
  auto shifted_trace = [&](ShiftDirection dir) {
    const BasisPermutation perm = shift_permutation({k, d, dir});
    Complex total = 0.0;
    for (std::size_t x = 0; x < perm.size(); ++x) {
      std::size_t row = x;
      std::size_t col = perm[x];
      Complex term = 1.0;
      for (unsigned t = k; t-- > 0;) {
        term *= factors[t](row % d, col % d);
        row /= d;
        col /= d;
      }
      total += term;
    }
    return total;
  };
  const Complex forward = shifted_trace(ShiftDirection::Forward);
  const Complex inverse = shifted_trace(ShiftDirection::Inverse);
  ComplexMatrix ordered = factors[0];
  ComplexMatrix reversed = factors[k - 1];
  for (unsigned t = 1; t < k; ++t) {
    ordered = ordered * factors[t];
    reversed = reversed * factors[k - 1 - t];
  }
  const double scale = std::max({1.0, std::abs(reversed.trace()), std::abs(ordered.trace())});
  return std::max(std::abs(forward - reversed.trace()), std::abs(inverse - ordered.trace())) / scale;
}

double pow_of(std::size_t base, unsigned k) {
  return std::pow(static_cast<double>(base), static_cast<double>(k));
}

}  // namespace

bool IdentitySuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [&](const IdentityCheck& c) { return c.skipped || c.deviation < tol; });
}

std::size_t IdentitySuiteReport::skipped() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.skipped; }));
}

std::size_t IdentitySuiteReport::executed() const { return checks.size() - skipped(); }

double IdentitySuiteReport::max_deviation(const std::string& name) const {
  double m = 0.0;
  for (const IdentityCheck& c : checks) {
    if (!c.skipped && c.identity == name) m = std::max(m, c.deviation);
  }
  return m;
}

double IdentitySuiteReport::max_deviation() const {
  double m = 0.0;
  for (const IdentityCheck& c : checks) {
    if (!c.skipped) m = std::max(m, c.deviation);
  }
  return m;
}

IdentitySuiteReport run_identity_suite(const BipartiteDims& dims, unsigned kmax,
                                       std::size_t trials, std::uint64_t seed, double tol) {
  IdentitySuiteReport report;
  report.d_a = dims.a();
  report.d_b = dims.b();
  report.kmax = kmax;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;

  auto record = [&](const char* name, unsigned k, std::size_t trial, double dev) {
    report.checks.push_back({name, k, trial, dev, false, {}});
  };
  auto skip = [&](const char* name, unsigned k, std::size_t trial, std::string why) {
    report.checks.push_back({name, k, trial, 0.0, true, std::move(why)});
  };

  using PS = PartyShift;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const DensityMatrix rho = random_density(dims, derive_seed(seed, kSeedTrial, trial));
    Rng local_rng(derive_seed(seed, kSeedTrial, trial, 1));
    const ComplexMatrix tb = partial_transpose(rho, Subsystem::B);
    const ComplexMatrix ta = partial_transpose(rho, Subsystem::A);
    const ComplexMatrix rho_a = partial_trace(rho, Subsystem::A);
    const ComplexMatrix rho_b = partial_trace(rho, Subsystem::B);

    for (unsigned k = 2; k <= kmax; ++k) {
      const Complex power_tb = trace_of_power(tb, k);
      const Complex power_ta = trace_of_power(ta, k);
      record(identity::kSpectralEquality, k, trial, std::abs(power_tb - power_ta));
      if (k == 2) {
        record(identity::kPurity, k, trial, std::abs(power_tb - trace_of_power(rho.matrix(), 2)));
      }

      for (std::size_t local : {dims.a(), dims.b()}) {
        if (pow_of(local, k) > static_cast<double>(kShiftMatrixGuard)) {
          skip(identity::kShiftProduct, k, trial, "local dimension^k exceeds shift-matrix guard");
        } else {
          record(identity::kShiftProduct, k, trial, shift_product_deviation(local, k, local_rng));
        }
      }

      if (bruteforce_terms(dims, k) > kBruteForceGuard) {
        const std::string why = "index tuples exceed brute-force guard";
        for (const char* name : {identity::kTransposeB, identity::kTransposeA, identity::kConjugate,
                                 identity::kReducedTraces, identity::kMuRoutes}) {
          skip(name, k, trial, why);
        }
        continue;
      }
      const Complex dag_a = shift_trace_bruteforce(rho, k, PS::Inverse, PS::Forward);
      const Complex dag_b = shift_trace_bruteforce(rho, k, PS::Forward, PS::Inverse);
      record(identity::kTransposeB, k, trial, std::abs(dag_a - power_tb));
      record(identity::kTransposeA, k, trial, std::abs(dag_b - power_ta));

      const ComplexMuParameters general = mu_parameters_from_shift_traces(rho, k);
      const double conj_dev = std::max({std::abs(dag_a - std::conj(dag_b)), std::abs(dag_a.imag()),
                                        std::abs(dag_b.imag()), std::abs(general.mu5)});
      record(identity::kConjugate, k, trial, conj_dev);

      const double reduced_dev = std::max(
          {std::abs(shift_trace_bruteforce(rho, k, PS::Forward, PS::Identity) - trace_of_power(rho_a, k)),
           std::abs(shift_trace_bruteforce(rho, k, PS::Identity, PS::Forward) - trace_of_power(rho_b, k)),
           std::abs(shift_trace_bruteforce(rho, k, PS::Forward, PS::Forward) -
                    trace_of_power(rho.matrix(), k))});
      record(identity::kReducedTraces, k, trial, reduced_dev);

      const MuParameters analytic = mu_parameters(rho, k);
      const double mu_dev = std::max({std::abs(general.mu1 - analytic.mu1),
                                      std::abs(general.mu2 - analytic.mu2),
                                      std::abs(general.mu3 - analytic.mu3),
                                      std::abs(general.mu4 - analytic.mu4),
                                      std::abs(general.mu5 - analytic.mu5)});
      record(identity::kMuRoutes, k, trial, mu_dev);
    }
  }
  return report;
}

std::string format_identity_table(const IdentitySuiteReport& report) {
  std::map<std::string, std::pair<double, std::size_t>> worst;  // max deviation, skips
  std::vector<std::string> order;
  for (const IdentityCheck& c : report.checks) {
    auto [it, inserted] = worst.try_emplace(c.identity, 0.0, 0);
    if (inserted) order.push_back(c.identity);
    if (c.skipped) {
      ++it->second.second;
    } else {
      it->second.first = std::max(it->second.first, c.deviation);
    }
  }
  std::ostringstream os;
  os << "identity suite: dims " << report.d_a << "x" << report.d_b << ", k = 2.." << report.kmax
     << ", " << report.trials << " trials, tol " << report.tol << "\n";
  for (const std::string& name : order) {
    const auto& [dev, skips] = worst[name];
    os << "  " << std::left << std::setw(36) << name << std::scientific << std::setprecision(3)
       << dev << (dev < report.tol ? "  pass" : "  FAIL");
    if (skips > 0) os << "  (" << skips << " skipped)";
    os << "\n";
  }
  os << (report.all_passed() ? "all executed checks pass" : "identity check FAILED") << " ("
     << report.executed() << " executed, " << report.skipped() << " skipped)\n";
  return os.str();
}

std::string identity_report_json(const IdentitySuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const IdentityCheck& c : report.checks) {
    nlohmann::json entry = {{"identity", c.identity}, {"k", c.k}, {"trial", c.trial}};
    if (c.skipped) {
      entry["skipped"] = true;
      entry["note"] = c.note;
    } else {
      entry["deviation"] = c.deviation;
      entry["pass"] = c.deviation < report.tol;
    }
    checks.push_back(std::move(entry));
  }
  nlohmann::json doc = {{"dims", {report.d_a, report.d_b}},
                        {"kmax", report.kmax},
                        {"trials", report.trials},
                        {"seed", report.seed},
                        {"tol", report.tol},
                        {"all_passed", report.all_passed()},
                        {"executed", report.executed()},
                        {"skipped", report.skipped()},
                        {"checks", std::move(checks)}};
  return doc.dump();
}

}  // namespace pptlocc
