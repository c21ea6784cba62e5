// Copyright 2026 The qxmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qxmap/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace qxmap {

std::string to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::Off:
      return "off";
    case VerifyMode::Perm:
      return "perm";
    case VerifyMode::Sim:
      return "sim";
    case VerifyMode::Both:
      return "both";
  }
  return "?";
}

VerifyMode parse_verify_mode(const std::string& name) {
  if (name == "off") return VerifyMode::Off;
  if (name == "perm") return VerifyMode::Perm;
  if (name == "sim") return VerifyMode::Sim;
  if (name == "both") return VerifyMode::Both;
  throw std::invalid_argument("unknown verify mode '" + name + "'");
}

CouplingMap resolve_architecture(const std::string& name) {
  if (name.rfind("file:", 0) == 0) return load_coupling_map(name.substr(5));
  return builtin_architecture(name);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::string csv_header() {
  return "benchmark,arch,strategy,seed,n,input_g,input_d,output_g,output_d,swaps,expanded_nodes,runtime_s,"
         "verification,status";
}

std::string to_csv(const RunRecord& r, bool runtime) {
  std::ostringstream out;
  out << r.benchmark << ',' << r.arch << ',' << r.strategy << ',' << r.seed << ',' << r.n << ',' << r.input_g << ','
      << r.input_d << ',' << r.output_g << ',' << r.output_d << ',' << r.swaps << ',' << r.expanded_nodes << ','
      << (runtime ? fixed(r.runtime_s, 6) : "") << ',' << r.verification << ',' << r.status;
  return out.str();
}

RunOutcome run_mapping(const Circuit& circuit, const CouplingMap& map, const RunConfig& config) {
  RunOutcome out;
  RunRecord& r = out.record;
  r.benchmark = config.benchmark;
  r.arch = map.name();
  r.strategy = to_string(config.strategy);
  r.seed = config.seed;
  r.n = circuit.num_qubits;
  r.input_g = circuit.size();
  r.input_d = depth(circuit);

  MapOptions options;
  options.seed = config.seed;
  options.initial = config.initial;
  options.search = config.search;
  if (config.timeout_s) options.timeout = std::chrono::duration<double>(*config.timeout_s);

  const auto started = std::chrono::steady_clock::now();
  try {
    const MappedPlan plan = map_circuit(circuit, map, config.strategy, options);
    out.mapped = assemble(plan, circuit, map);
    r.expanded_nodes = plan.expanded();
    r.swaps = plan.swap_count();
  } catch (const UnmappableError& e) {
    out.code = ExitCode::Unmappable;
    out.error = e.what();
    r.status = "unmappable";
  } catch (const SearchLimitError& e) {
    out.code = ExitCode::Timeout;
    out.error = e.what();
    r.status = "timeout";
  } catch (const std::exception& e) {
    out.code = ExitCode::Other;
    out.error = e.what();
    r.status = "error";
  }
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (!out.mapped) return out;

  r.output_g = out.mapped->gate_count();
  r.output_d = out.mapped->depth();
  if (config.verify == VerifyMode::Off) return out;

  VerificationReport report;
  report.constraints = check_constraints(*out.mapped, map);
  if (config.verify == VerifyMode::Perm || config.verify == VerifyMode::Both)
    report.perm = check_equivalence_perm(circuit, *out.mapped);
  const bool need_sim = config.verify == VerifyMode::Sim || config.verify == VerifyMode::Both ||
                        (report.perm && report.perm->verdict == Verdict::Inconclusive);
  if (need_sim) report.sim = check_equivalence_sim(circuit, *out.mapped, config.sim);
  r.verification = report.passed() ? "pass" : "fail";
  if (!report.passed()) {
    out.code = ExitCode::VerifyFailed;
    out.error = "verification failed: " + to_json_line(report);
  }
  out.report = std::move(report);
  return out;
}

Spread spread(const std::vector<double>& values) {
  Spread s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.avg = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.avg) * (v - s.avg);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

BenchResult bench(const BenchConfig& config) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(config.corpus_dir))
    if (e.is_regular_file() && e.path().extension() == ".qasm") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  const CouplingMap map = resolve_architecture(config.arch);
  BenchResult result;
  for (const fs::path& file : files) {
    const std::string name = file.stem().string();
    std::optional<Circuit> circuit;
    std::string parse_error;
    try {
      circuit = load_qasm(read_file(file.string()), config.parse);
    } catch (const std::exception& e) {
      parse_error = e.what();
    }

    std::optional<double> baseline_g;
    std::optional<double> baseline_d;
    for (Strategy strategy : config.strategies) {
      BenchRow row;
      row.benchmark = name;
      row.arch = map.name();
      row.strategy = to_string(strategy);
      std::vector<double> g;
      std::vector<double> d;
      std::vector<double> t;
      bool all_pass = true;
      bool any_verified = false;
      for (int rep = 0; rep < config.repetitions; ++rep) {
        RunRecord record;
        if (!circuit) {
          record.benchmark = name;
          record.arch = map.name();
          record.strategy = row.strategy;
          record.seed = config.seed + static_cast<std::uint64_t>(rep);
          record.status = "parse-error";
        } else {
          RunConfig rc;
          rc.benchmark = name;
          rc.strategy = strategy;
          rc.seed = config.seed + static_cast<std::uint64_t>(rep);
          rc.timeout_s = config.timeout_s;
          rc.verify = config.verify;
          rc.initial = strategy == Strategy::Full ? std::nullopt : config.initial;
          rc.search = config.search;
          record = run_mapping(*circuit, map, rc).record;
        }
        row.n = record.n;
        row.input_g = record.input_g;
        row.input_d = record.input_d;
        ++row.runs;
        if (record.status != "ok") {
          ++row.failures;
        } else {
          g.push_back(static_cast<double>(record.output_g));
          d.push_back(static_cast<double>(record.output_d));
          t.push_back(record.runtime_s);
        }
        if (record.verification != "skipped") any_verified = true;
        if (record.verification == "fail") all_pass = false;
        result.runs.push_back(std::move(record));
      }
      row.g = spread(g);
      row.d = spread(d);
      row.t = spread(t);
      row.verification = !any_verified ? "skipped" : (all_pass ? "pass" : "fail");
      if (row.failures == 0 && strategy == Strategy::Baseline) {
        baseline_g = row.g.avg;
        baseline_d = row.d.avg;
      }
      if (row.failures == 0 && baseline_g && *baseline_g > 0) {
        row.g_reduction_pct = 100.0 * (*baseline_g - row.g.avg) / *baseline_g;
        row.d_reduction_pct = 100.0 * (*baseline_d - row.d.avg) / *baseline_d;
      }
      result.rows.push_back(std::move(row));
    }
  }

  // Means over the benchmarks on which every strategy succeeded.
  std::map<std::string, std::vector<const BenchRow*>> by_benchmark;
  for (const BenchRow& row : result.rows) by_benchmark[row.benchmark].push_back(&row);
  for (Strategy strategy : config.strategies) {
    BenchRow s;
    s.benchmark = "ALL";
    s.arch = map.name();
    s.strategy = to_string(strategy);
    std::vector<double> g_red;
    std::vector<double> d_red;
    std::vector<double> g;
    std::vector<double> d;
    std::vector<double> t;
    bool all_pass = true;
    for (const auto& [name, rows] : by_benchmark) {
      const bool complete = std::all_of(rows.begin(), rows.end(), [](const BenchRow* r) {
        return r->failures == 0 && r->g_reduction_pct.has_value();
      });
      if (!complete) continue;
      for (const BenchRow* r : rows) {
        if (r->strategy != s.strategy) continue;
        ++s.runs;
        g_red.push_back(*r->g_reduction_pct);
        d_red.push_back(*r->d_reduction_pct);
        g.push_back(r->g.avg);
        d.push_back(r->d.avg);
        t.push_back(r->t.avg);
        if (r->verification == "fail") all_pass = false;
      }
    }
    s.g = spread(g);
    s.d = spread(d);
    s.t = spread(t);
    s.verification = all_pass ? "pass" : "fail";
    if (!g_red.empty()) {
      s.g_reduction_pct = spread(g_red).avg;
      s.d_reduction_pct = spread(d_red).avg;
    }
    result.summary.push_back(std::move(s));
  }
  return result;
}

std::string bench_csv(const BenchResult& result, bool runtime) {
  std::ostringstream out;
  out << "benchmark,arch,strategy,n,input_g,input_d,runs,failures,g_min,g_avg,g_std,d_min,d_avg,d_std,t_min,t_avg,"
         "t_std,verification,g_reduction_pct,d_reduction_pct\n";
  auto opt = [](const std::optional<double>& x) { return x ? fixed(*x, 2) : std::string(); };
  auto emit = [&](const BenchRow& r) {
    out << r.benchmark << ',' << r.arch << ',' << r.strategy << ',' << r.n << ',' << r.input_g << ',' << r.input_d
        << ',' << r.runs << ',' << r.failures << ',' << fixed(r.g.min, 0) << ',' << fixed(r.g.avg, 2) << ','
        << fixed(r.g.std, 2) << ',' << fixed(r.d.min, 0) << ',' << fixed(r.d.avg, 2) << ',' << fixed(r.d.std, 2)
        << ',';
    if (runtime)
      out << fixed(r.t.min, 4) << ',' << fixed(r.t.avg, 4) << ',' << fixed(r.t.std, 4);
    else
      out << ",,";
    out << ',' << r.verification << ',' << opt(r.g_reduction_pct) << ',' << opt(r.d_reduction_pct) << '\n';
  };
  for (const BenchRow& r : result.rows) emit(r);
  for (const BenchRow& r : result.summary) emit(r);
  return out.str();
}

std::string runs_csv(const BenchResult& result, bool runtime) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const RunRecord& r : result.runs) out << to_csv(r, runtime) << '\n';
  return out.str();
}

}  // namespace qxmap
