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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qxmap/circuit.hpp"
#include "qxmap/coupling_map.hpp"
#include "qxmap/emitter.hpp"
#include "qxmap/mapper.hpp"
#include "qxmap/qasm.hpp"
#include "qxmap/verifier.hpp"

namespace qxmap {

/// Process exit codes of the command-line tool.
enum class ExitCode : int {
  Ok = 0,
  ParseError = 1,
  Unmappable = 2,
  Timeout = 3,
  VerifyFailed = 4,
  Other = 5,
};

enum class VerifyMode { Off, Perm, Sim, Both };

std::string to_string(VerifyMode mode);
VerifyMode parse_verify_mode(const std::string& name);

/// `qx2`..`qx5` or `file:PATH`.
CouplingMap resolve_architecture(const std::string& name);

/// One mapping run, one CSV row.
struct RunRecord {
  std::string benchmark;
  std::string arch;
  std::string strategy;
  std::uint64_t seed = 0;
  int n = 0;
  std::size_t input_g = 0;
  std::size_t input_d = 0;
  std::size_t output_g = 0;
  std::size_t output_d = 0;
  std::size_t swaps = 0;
  std::size_t expanded_nodes = 0;
  double runtime_s = 0.0;
  /// pass, fail or skipped.
  std::string verification = "skipped";
  /// ok, parse-error, unmappable, timeout or error.
  std::string status = "ok";
};

std::string csv_header();
/// With `runtime` false the runtime column is left empty.
std::string to_csv(const RunRecord& record, bool runtime = true);

struct RunConfig {
  std::string benchmark;
  Strategy strategy = Strategy::Full;
  std::uint64_t seed = 0;
  std::optional<double> timeout_s;
  VerifyMode verify = VerifyMode::Both;
  std::optional<Mapping> initial;
  SearchOptions search;
  SimOptions sim;
};

struct RunOutcome {
  RunRecord record;
  ExitCode code = ExitCode::Ok;
  std::string error;
  std::optional<MappedCircuit> mapped;
  std::optional<VerificationReport> report;
};

/// Maps, assembles and verifies. Mapping failures are reported through
/// `code` and `error`, never thrown.
RunOutcome run_mapping(const Circuit& circuit, const CouplingMap& map, const RunConfig& config);

struct BenchConfig {
  std::string corpus_dir;
  std::string arch = "qx5";
  std::vector<Strategy> strategies = {Strategy::Baseline, Strategy::LookAhead, Strategy::Full};
  int repetitions = 5;
  std::uint64_t seed = 0;
  VerifyMode verify = VerifyMode::Both;
  std::optional<double> timeout_s;
  std::optional<Mapping> initial;
  SearchOptions search;
  ParseOptions parse;
};

/// min / mean / population standard deviation.
struct Spread {
  double min = 0.0;
  double avg = 0.0;
  double std = 0.0;
};

Spread spread(const std::vector<double>& values);

/// Per (benchmark, strategy) aggregate over repetitions.
struct BenchRow {
  std::string benchmark;
  std::string arch;
  std::string strategy;
  int n = 0;
  std::size_t input_g = 0;
  std::size_t input_d = 0;
  int runs = 0;
  int failures = 0;
  Spread g;
  Spread d;
  Spread t;
  std::string verification;
  /// Relative to the baseline row of the same benchmark, in percent.
  std::optional<double> g_reduction_pct;
  std::optional<double> d_reduction_pct;
};

struct BenchResult {
  std::vector<RunRecord> runs;
  std::vector<BenchRow> rows;
  /// One row per strategy with benchmark "ALL": mean reductions over the
  /// benchmarks every strategy mapped.
  std::vector<BenchRow> summary;
};

/// Maps every `*.qasm` in the corpus (sorted by name) with every strategy,
/// `repetitions` times. Seeds are seed, seed+1, ...
BenchResult bench(const BenchConfig& config);

/// Aggregate table. With `runtime` false the t columns are left empty.
std::string bench_csv(const BenchResult& result, bool runtime = true);
/// Per-run table.
std::string runs_csv(const BenchResult& result, bool runtime = true);

std::string read_file(const std::string& path);

}  // namespace qxmap
