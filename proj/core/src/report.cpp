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

#include "pptlocc/report.hpp"

#include <algorithm>
#include <array>
#include <string_view>

#include <json.hpp>

#include "pptlocc/errors.hpp"

#ifndef PPTLOCC_VERSION
#define PPTLOCC_VERSION "0.0.0"
#endif

namespace pptlocc {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 13> kReportFields = {
    "dims",      "method",    "power_sums", "power_sum_stderr", "spectrum",
    "lambda_min", "sigma",    "classification", "shots_per_k", "seed",
    "eta_scale", "copies_consumed", "tool_version"};

}  // namespace

std::string tool_version() { return "pptlocc " PPTLOCC_VERSION; }

Classification parse_classification(const std::string& text) {
  for (Classification c : {Classification::NptEntangled, Classification::PptConclusiveSeparable,
                           Classification::PptInconclusive}) {
    if (to_string(c) == text) return c;
  }
  throw FormatError("unknown classification '" + text + "'");
}

Method parse_method(const std::string& text) {
  for (Method m : {Method::Exact, Method::LoccExact, Method::LoccShots}) {
    if (to_string(m) == text) return m;
  }
  throw FormatError("unknown method '" + text + "'");
}

Report make_report(const PipelineResult& result) {
  Report r;
  r.d_a = result.dims.a();
  r.d_b = result.dims.b();
  r.method = result.method;
  const auto& ps = result.power_sums;
  if (ps.p.size() > 1) {
    r.power_sums.assign(ps.p.begin() + 1, ps.p.end());
    r.power_sum_stderr.assign(ps.standard_errors.begin() + 1, ps.standard_errors.end());
  }
  r.spectrum = result.spectrum.lambdas;
  if (result.verdict) {
    r.lambda_min = result.verdict->lambda_min;
    r.sigma = result.verdict->sigma;
    r.classification = result.verdict->classification;
  } else if (result.bootstrap) {
    r.sigma = result.bootstrap->sigma;
  }
  r.shots_per_k = result.shots_per_k;
  r.seed = result.seed;
  r.eta_scale = result.eta_scale;
  r.copies_consumed = result.copies_consumed;
  r.tool_version = tool_version();
  return r;
}

std::string to_json(const Report& report, int indent) {
  json doc;
  doc["dims"] = {report.d_a, report.d_b};
  doc["method"] = to_string(report.method);
  doc["power_sums"] = report.power_sums;
  doc["power_sum_stderr"] = report.power_sum_stderr;
  doc["spectrum"] = report.spectrum;
  doc["lambda_min"] = report.lambda_min ? json(*report.lambda_min) : json(nullptr);
  doc["sigma"] = report.sigma;
  doc["classification"] =
      report.classification ? json(to_string(*report.classification)) : json(nullptr);
  doc["shots_per_k"] = report.shots_per_k;
  doc["seed"] = report.seed;
  doc["eta_scale"] = report.eta_scale;
  doc["copies_consumed"] = report.copies_consumed;
  doc["tool_version"] = report.tool_version;
  return doc.dump(indent);
}

Report report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("report must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kReportFields.begin(), kReportFields.end(), key) == kReportFields.end()) {
      throw FormatError("unknown report field '" + key + "'");
    }
  }
  try {
    Report r;
    const auto& dims = doc.at("dims");
    if (!dims.is_array() || dims.size() != 2) throw FormatError("\"dims\" must have two entries");
    r.d_a = dims[0].get<std::size_t>();
    r.d_b = dims[1].get<std::size_t>();
    r.method = parse_method(doc.at("method").get<std::string>());
    r.power_sums = doc.at("power_sums").get<std::vector<double>>();
    r.power_sum_stderr = doc.at("power_sum_stderr").get<std::vector<double>>();
    r.spectrum = doc.at("spectrum").get<std::vector<double>>();
    if (!doc.at("lambda_min").is_null()) r.lambda_min = doc.at("lambda_min").get<double>();
    r.sigma = doc.at("sigma").get<double>();
    if (!doc.at("classification").is_null()) {
      r.classification = parse_classification(doc.at("classification").get<std::string>());
    }
    r.shots_per_k = doc.at("shots_per_k").get<std::uint64_t>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.eta_scale = doc.at("eta_scale").get<double>();
    r.copies_consumed = doc.at("copies_consumed").get<std::uint64_t>();
    r.tool_version = doc.at("tool_version").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

bool classification_consistent(const Report& report, double z) {
  if (!report.lambda_min || !report.classification) {
    return !report.lambda_min && !report.classification;
  }
  Spectrum s;
  s.lambdas = {*report.lambda_min};
  const PptVerdict v = verdict(s, BipartiteDims(report.d_a, report.d_b), report.sigma, z);
  return v.classification == *report.classification;
}

}  // namespace pptlocc
