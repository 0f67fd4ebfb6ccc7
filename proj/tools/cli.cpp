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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "pptlocc/errors.hpp"
#include "pptlocc/estimation.hpp"
#include "pptlocc/identity_suite.hpp"
#include "pptlocc/pipeline.hpp"
#include "pptlocc/report.hpp"
#include "pptlocc/states.hpp"

namespace pptlocc::cli {

namespace {

using nlohmann::json;

struct GenArgs {
  std::string kind;
  std::string which = "phi+";
  std::optional<double> p;
  std::vector<std::size_t> dims{2, 2};
  std::uint64_t seed = 0;
  std::size_t terms = 4;
  std::string in_path;
  double noise = 0.0;
  std::string out_path;
};

struct CheckArgs {
  std::string state_path;
  double z = 3.0;
};

struct SimulateArgs {
  std::string state_path;
  std::uint64_t shots = 100'000;
  std::uint64_t seed = 0;
  double z = 3.0;
  std::size_t bootstrap = 200;
  bool exact_probabilities = false;
  double eta_scale = kCalibratedEtaScale;
  double imag_cap = 0.05;
  bool no_shortcut = false;
  std::string config_path;
};

struct VerifyArgs {
  std::vector<std::size_t> dims{2, 2};
  unsigned kmax = 4;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  double tol = 1e-10;
};

struct CalibrateArgs {
  std::vector<std::size_t> dims{2, 2};
  std::string write_config;
};

BipartiteDims to_dims(const std::vector<std::size_t>& v) {
  if (v.size() != 2) throw DimensionError("--dims takes exactly two values");
  return BipartiteDims(v[0], v[1]);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text << "\n";
  if (!out) throw FormatError("write failed for " + path);
}

std::string format_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(6) << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

std::string human_summary(const Report& r) {
  std::ostringstream os;
  os << "method " << to_string(r.method) << ", dims " << r.d_a << "x" << r.d_b << "\n";
  os << "  spectrum of partial transpose: " << format_vector(r.spectrum) << "\n";
  if (r.lambda_min) {
    os << "  lambda_min = " << std::setprecision(8) << *r.lambda_min;
    if (r.sigma > 0.0) os << " +/- " << std::setprecision(3) << r.sigma;
    os << "\n";
  }
  if (r.classification) os << "  classification: " << to_string(*r.classification) << "\n";
  if (r.method == Method::LoccShots) {
    os << "  shots per k " << r.shots_per_k << ", copies consumed " << r.copies_consumed << "\n";
  }
  return os.str();
}

// Applies a JSON config file to `cfg`; keys not given on the command line win.
void apply_config(const std::string& path, EstimationConfig& cfg, const CLI::App& sub) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw FormatError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw FormatError("config " + path + ": expected an object");
  auto given = [&](const char* flag) { return sub.get_option(flag)->count() > 0; };
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "eta_scale") {
        if (!given("--eta-scale")) cfg.eta_scale = value.get<double>();
      } else if (key == "shots_per_k") {
        if (!given("--shots")) cfg.shots_per_k = value.get<std::uint64_t>();
      } else if (key == "seed") {
        if (!given("--seed")) cfg.seed = value.get<std::uint64_t>();
      } else if (key == "z") {
        if (!given("--z")) cfg.z = value.get<double>();
      } else if (key == "bootstrap_replicas") {
        if (!given("--bootstrap")) cfg.bootstrap_replicas = value.get<std::size_t>();
      } else if (key == "imag_cap") {
        if (!given("--imag-cap")) cfg.imag_cap = value.get<double>();
      } else if (key == "use_k2_shortcut") {
        if (!given("--no-shortcut")) cfg.use_k2_shortcut = value.get<bool>();
      } else {
        throw FormatError("config " + path + ": unknown key '" + key + "'");
      }
    } catch (const json::type_error& e) {
      throw FormatError("config " + path + ": bad value for '" + key + "'");
    }
  }
}

DensityMatrix generate(const GenArgs& a) {
  if (a.kind == "bell") return bell_state(parse_bell_kind(a.which));
  if (a.kind == "werner") {
    if (!a.p) throw std::invalid_argument("gen werner requires --p");
    return werner(*a.p);
  }
  if (a.kind == "random") return random_density(to_dims(a.dims), a.seed);
  if (a.kind == "separable") return random_separable(to_dims(a.dims), a.terms, a.seed);
  if (a.kind == "file") {
    if (a.in_path.empty()) throw std::invalid_argument("gen file requires --in");
    return depolarize(load(a.in_path), a.noise);
  }
  throw std::invalid_argument("unknown state kind '" + a.kind + "'");
}

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = generate(a);
  if (a.out_path.empty()) {
    out << to_json(rho) << "\n";
  } else {
    save(rho, a.out_path);
  }
  err << a.kind << " state, dims " << rho.dims().a() << "x" << rho.dims().b() << ": "
      << validate(rho).summary() << "\n";
  return kExitOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = load(a.state_path);
  const Report report = make_report(run_exact_check(rho, a.z));
  out << to_json(report) << "\n";
  err << human_summary(report);
  return kExitOk;
}

int cmd_simulate(const SimulateArgs& a, const CLI::App& sub, std::ostream& out,
                 std::ostream& err) {
  EstimationConfig cfg;
  cfg.shots_per_k = a.shots;
  cfg.seed = a.seed;
  cfg.z = a.z;
  cfg.bootstrap_replicas = a.bootstrap;
  cfg.eta_scale = a.eta_scale;
  cfg.imag_cap = a.imag_cap;
  cfg.use_k2_shortcut = !a.no_shortcut;
  if (!a.config_path.empty()) apply_config(a.config_path, cfg, sub);
  if (!a.exact_probabilities && cfg.shots_per_k < 1) {
    throw std::invalid_argument("--shots must be at least 1");
  }

  const DensityMatrix rho = load(a.state_path);
  const PipelineResult result = run_locc(rho, cfg, a.exact_probabilities);
  const Report report = make_report(result);
  out << to_json(report) << "\n";
  err << human_summary(report);
  if (result.failure) {
    err << "estimation failed: " << *result.failure << "\n";
    return kExitEstimationFailure;
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.kmax < 2) throw std::invalid_argument("--kmax must be at least 2");
  const IdentitySuiteReport report =
      run_identity_suite(to_dims(a.dims), a.kmax, a.trials, a.seed, a.tol);
  out << identity_report_json(report) << "\n";
  err << format_identity_table(report);
  return report.all_passed() ? kExitOk : kExitIdentityFailure;
}

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  const BipartiteDims dims = to_dims(a.dims);
  const CalibrationResult cal = calibrate_eta_scale(dims);
  json points = json::array();
  for (const CalibrationPoint& pt : cal.points) {
    points.push_back({{"state", pt.state},
                      {"exact_eta", pt.exact_eta},
                      {"alternating_sum", pt.alternating_sum},
                      {"residual", pt.residual}});
  }
  const json doc = {{"dims", {dims.a(), dims.b()}},
                    {"eta_scale", cal.eta_scale},
                    {"max_residual", cal.max_residual},
                    {"points", std::move(points)}};
  out << doc.dump() << "\n";
  err << "eta_scale = " << std::setprecision(12) << cal.eta_scale << " (max residual "
      << std::scientific << std::setprecision(2) << cal.max_residual << ")\n";
  if (!a.write_config.empty()) {
    write_text(a.write_config, json{{"eta_scale", cal.eta_scale}}.dump(2));
    err << "wrote " << a.write_config << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LOCC estimation of partial-transpose spectra and PPT checks", "pptlocc"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a state file");
  gen_cmd->add_option("kind", gen.kind, "bell | werner | random | separable | file")
      ->required()
      ->check(CLI::IsMember({"bell", "werner", "random", "separable", "file"}));
  gen_cmd->add_option("--which", gen.which, "Bell state: phi+, phi-, psi+, psi-");
  gen_cmd->add_option("--p", gen.p, "Werner singlet weight in [0, 1]");
  gen_cmd->add_option("--dims", gen.dims, "Local dimensions dA dB")->expected(2);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--terms", gen.terms, "Product terms in a separable mixture");
  gen_cmd->add_option("--in", gen.in_path, "Input state file (kind file)");
  gen_cmd->add_option("--noise", gen.noise, "Depolarizing weight for kind file");
  gen_cmd->add_option("--out", gen.out_path, "Output path (default: stdout)");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Exact partial-transpose check");
  check_cmd->add_option("state", check.state_path, "State file")->required();
  check_cmd->add_option("--z", check.z, "Significance multiplier");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate the LOCC estimation protocol");
  sim_cmd->add_option("state", sim.state_path, "State file")->required();
  sim_cmd->add_option("--shots", sim.shots, "Shots per k");
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--z", sim.z, "Significance multiplier");
  sim_cmd->add_option("--bootstrap", sim.bootstrap, "Bootstrap replicas (0 disables)");
  sim_cmd->add_flag("--exact-probabilities", sim.exact_probabilities,
                    "Use exact outcome probabilities instead of shots");
  sim_cmd->add_option("--eta-scale", sim.eta_scale, "Scale from alternating sum to eta");
  sim_cmd->add_option("--imag-cap", sim.imag_cap, "Imaginary-part cap on lambda_min");
  sim_cmd->add_flag("--no-shortcut", sim.no_shortcut, "Run the full network at k = 2 too");
  sim_cmd->add_option("--config", sim.config_path, "JSON config file");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the trace-identity suite");
  ver_cmd->add_option("--dims", ver.dims, "Local dimensions dA dB")->expected(2);
  ver_cmd->add_option("--kmax", ver.kmax, "Largest k");
  ver_cmd->add_option("--trials", ver.trials, "Random states per k");
  ver_cmd->add_option("--seed", ver.seed, "Master seed");
  ver_cmd->add_option("--tol", ver.tol, "Pass threshold");

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Fit the eta scale on reference states");
  cal_cmd->add_option("--dims", cal.dims, "Local dimensions dA dB")->expected(2);
  cal_cmd->add_option("--write-config", cal.write_config, "Write {\"eta_scale\": c} here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*check_cmd) return cmd_check(check, out, err);
    if (*sim_cmd) return cmd_simulate(sim, *sim_cmd, out, err);
    if (*ver_cmd) return cmd_verify(ver, out, err);
    if (*cal_cmd) return cmd_calibrate(cal, out, err);
  } catch (const EstimationTooNoisy& e) {
    err << "error: " << e.what() << "\n";
    return kExitEstimationFailure;
  } catch (const CalibrationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEstimationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace pptlocc::cli
