// Copyright 2026 The invgen Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "invgen/bench.h"
#include "invgen/error.h"
#include "json.hpp"

namespace invgen {
namespace {

using ojson = nlohmann::ordered_json;

ojson PassJson(const std::map<int, double>& pass) {
  ojson j = ojson::object();
  for (const auto& [k, v] : pass) j[std::to_string(k)] = v;
  return j;
}

std::map<int, double> PassFromJson(const ojson& j) {
  std::map<int, double> out;
  for (const auto& [k, v] : j.items()) out[std::stoi(k)] = v.get<double>();
  return out;
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string ReportJson(const MetricsReport& m) {
  ojson doc;
  doc["ks"] = m.ks;
  ojson methods = ojson::array();
  for (const auto& mm : m.methods) {
    ojson j;
    j["method"] = mm.method;
    j["programs"] = mm.programs;
    j["runs"] = mm.runs;
    j["per_run_success_rate"] = mm.per_run_success_rate;
    j["avg_success_rate"] = mm.avg_success_rate;
    j["std_dev_success_rate"] = mm.std_dev_success_rate;
    j["avg_refinement_iters"] = mm.avg_refinement_iters;
    j["avg_repair_iters"] = mm.avg_repair_iters;
    j["pass_at_k"] = PassJson(mm.pass_at_k);
    j["failure_stages"] = {{"refinement", mm.failure_refinement_share},
                           {"repair", mm.failure_repair_share}};
    j["refinement_failure_split"] = {
        {"implication1", mm.implication1_failures},
        {"implication2", mm.implication2_failures},
        {"implication1_share", mm.implication1_share},
        {"implication2_share", mm.implication2_share}};
    ojson cats = ojson::array();
    for (const auto& c : mm.categories) {
      cats.push_back({{"category", c.category},
                      {"programs", c.programs},
                      {"avg_success_rate", c.avg_success_rate},
                      {"pass_at_k", PassJson(c.pass_at_k)}});
    }
    j["categories"] = std::move(cats);
    methods.push_back(std::move(j));
  }
  doc["methods"] = std::move(methods);
  return doc.dump(2) + "\n";
}

MetricsReport ReportFromJson(const std::string& text) {
  MetricsReport m;
  try {
    ojson doc = ojson::parse(text);
    m.ks = doc.at("ks").get<std::vector<int>>();
    for (const auto& j : doc.at("methods")) {
      MethodMetrics mm;
      mm.method = j.at("method").get<std::string>();
      mm.programs = j.at("programs").get<int>();
      mm.runs = j.at("runs").get<int>();
      mm.per_run_success_rate =
          j.at("per_run_success_rate").get<std::vector<double>>();
      mm.avg_success_rate = j.at("avg_success_rate").get<double>();
      mm.std_dev_success_rate = j.at("std_dev_success_rate").get<double>();
      mm.avg_refinement_iters = j.at("avg_refinement_iters").get<double>();
      mm.avg_repair_iters = j.at("avg_repair_iters").get<double>();
      mm.pass_at_k = PassFromJson(j.at("pass_at_k"));
      mm.failure_refinement_share =
          j.at("failure_stages").at("refinement").get<double>();
      mm.failure_repair_share = j.at("failure_stages").at("repair").get<double>();
      const auto& split = j.at("refinement_failure_split");
      mm.implication1_failures = split.at("implication1").get<int>();
      mm.implication2_failures = split.at("implication2").get<int>();
      mm.implication1_share = split.at("implication1_share").get<double>();
      mm.implication2_share = split.at("implication2_share").get<double>();
      for (const auto& c : j.at("categories")) {
        CategoryMetrics cm;
        cm.category = c.at("category").get<std::string>();
        cm.programs = c.at("programs").get<int>();
        cm.avg_success_rate = c.at("avg_success_rate").get<double>();
        cm.pass_at_k = PassFromJson(c.at("pass_at_k"));
        mm.categories.push_back(std::move(cm));
      }
      m.methods.push_back(std::move(mm));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return m;
}

std::string ReportCsv(const MetricsReport& m) {
  std::ostringstream out;
  out << "method,scope,metric,value\n";
  for (const auto& mm : m.methods) {
    auto row = [&](const std::string& scope, const std::string& metric,
                   const std::string& value) {
      out << mm.method << ',' << scope << ',' << metric << ',' << value << '\n';
    };
    row("all", "programs", std::to_string(mm.programs));
    row("all", "runs", std::to_string(mm.runs));
    for (size_t i = 0; i < mm.per_run_success_rate.size(); ++i) {
      row("run" + std::to_string(i + 1), "success_rate",
          Num(mm.per_run_success_rate[i]));
    }
    row("all", "avg_success_rate", Num(mm.avg_success_rate));
    row("all", "std_dev_success_rate", Num(mm.std_dev_success_rate));
    row("all", "avg_refinement_iters", Num(mm.avg_refinement_iters));
    row("all", "avg_repair_iters", Num(mm.avg_repair_iters));
    for (const auto& [k, v] : mm.pass_at_k) {
      row("all", "pass_at_" + std::to_string(k), Num(v));
    }
    row("all", "failure_stage_refinement", Num(mm.failure_refinement_share));
    row("all", "failure_stage_repair", Num(mm.failure_repair_share));
    row("all", "refinement_failure_split",
        "implication1=" + Num(mm.implication1_share) +
            ";implication2=" + Num(mm.implication2_share));
    for (const auto& c : mm.categories) {
      row(c.category, "programs", std::to_string(c.programs));
      row(c.category, "avg_success_rate", Num(c.avg_success_rate));
      for (const auto& [k, v] : c.pass_at_k) {
        row(c.category, "pass_at_" + std::to_string(k), Num(v));
      }
    }
  }
  return out.str();
}

void EmitReport(const MetricsReport& m, const std::string& format,
                const std::string& path) {
  std::string text;
  if (format == "json") {
    text = ReportJson(m);
  } else if (format == "csv") {
    text = ReportCsv(m);
  } else {
    throw Error("unknown report format " + format);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

std::string RecordsJsonl(const std::vector<RunRecord>& records,
                         bool include_timing) {
  std::ostringstream out;
  for (const auto& r : records) {
    ojson j;
    j["program"] = r.program;
    j["category"] = r.category;
    j["run"] = r.run;
    j["method"] = MethodName(r.method);
    j["success"] = r.success;
    j["refinement_iters"] = r.refinement_iters;
    j["repair_iters"] = r.repair_iters;
    if (include_timing) j["wall_ms"] = r.wall_ms;
    j["failure_stage"] = FailureStageName(r.failure_stage);
    j["implication1_failures"] = r.implication1_failures;
    j["implication2_failures"] = r.implication2_failures;
    if (!r.note.empty()) j["note"] = r.note;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace invgen
