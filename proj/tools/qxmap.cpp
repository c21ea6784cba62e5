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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qxmap/harness.hpp"

namespace {

using namespace qxmap;

int code(ExitCode c) { return static_cast<int>(c); }

void append_csv(const std::string& path, const RunRecord& record) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (fresh) out << csv_header() << '\n';
  out << to_csv(record) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct MapArgs {
  std::string input;
  std::string output;
  std::string arch = "qx5";
  std::string strategy = "full";
  std::string verify = "both";
  std::string stats;
  std::string report;
  std::string stdlib;
  std::string initial;
  std::uint64_t seed = 0;
  double timeout = 0.0;
  int window = 1;
  std::size_t budget = 5'000'000;
};

int run_map(const MapArgs& a) {
  ParseOptions parse;
  Circuit circuit;
  CouplingMap map = builtin_architecture("qx2");
  RunConfig config;
  try {
    if (!a.stdlib.empty()) parse.stdlib = read_file(a.stdlib);
    map = resolve_architecture(a.arch);
    config.strategy = parse_strategy(a.strategy);
    config.verify = parse_verify_mode(a.verify);
  } catch (const std::exception& e) {
    std::cerr << "qxmap: " << e.what() << '\n';
    return code(ExitCode::Other);
  }
  try {
    circuit = load_qasm(read_file(a.input), parse);
  } catch (const QasmError& e) {
    std::cerr << a.input << ':' << e.what() << '\n';
    return code(ExitCode::ParseError);
  } catch (const std::exception& e) {
    std::cerr << "qxmap: " << e.what() << '\n';
    return code(ExitCode::ParseError);
  }

  config.benchmark = std::filesystem::path(a.input).stem().string();
  config.seed = a.seed;
  if (a.timeout > 0) config.timeout_s = a.timeout;
  config.search.window = a.window;
  config.search.node_budget = a.budget;
  if (!a.initial.empty()) {
    try {
      config.initial = parse_mapping(a.initial, circuit.num_qubits, map.size());
    } catch (const std::exception& e) {
      std::cerr << "qxmap: --initial: " << e.what() << '\n';
      return code(ExitCode::Other);
    }
  }

  const RunOutcome outcome = run_mapping(circuit, map, config);
  try {
    if (!a.stats.empty()) append_csv(a.stats, outcome.record);
    if (outcome.report && !a.report.empty()) {
      std::ofstream out(a.report, std::ios::app);
      out << to_json_line(*outcome.report, config.benchmark) << '\n';
    }
    if (outcome.mapped) {
      const std::string text = to_qasm(*outcome.mapped);
      if (a.output.empty() || a.output == "-")
        std::cout << text;
      else
        write_file(a.output, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "qxmap: " << e.what() << '\n';
    return code(ExitCode::Other);
  }
  if (outcome.code != ExitCode::Ok) {
    std::cerr << "qxmap: " << outcome.error << '\n';
    return code(outcome.code);
  }
  const RunRecord& r = outcome.record;
  std::cerr << config.benchmark << ": " << r.strategy << " on " << r.arch << ": g " << r.input_g << " -> " << r.output_g
            << ", d " << r.input_d << " -> " << r.output_d << ", " << r.swaps << " swaps, verification "
            << r.verification << '\n';
  return code(ExitCode::Ok);
}

struct BenchArgs {
  std::string corpus;
  std::string arch = "qx5";
  std::vector<std::string> strategies = {"baseline", "lookahead", "full"};
  std::string verify = "both";
  std::string output;
  std::string runs;
  std::string stdlib;
  std::string initial;
  int reps = 5;
  std::uint64_t seed = 0;
  double timeout = 0.0;
  int window = 1;
  std::size_t budget = 5'000'000;
};

int run_bench(const BenchArgs& a) {
  BenchConfig config;
  try {
    config.corpus_dir = a.corpus;
    config.arch = a.arch;
    config.strategies.clear();
    for (const std::string& s : a.strategies) config.strategies.push_back(parse_strategy(s));
    config.repetitions = a.reps;
    config.seed = a.seed;
    config.verify = parse_verify_mode(a.verify);
    if (a.timeout > 0) config.timeout_s = a.timeout;
    config.search.window = a.window;
    config.search.node_budget = a.budget;
    if (!a.stdlib.empty()) config.parse.stdlib = read_file(a.stdlib);
    if (!a.initial.empty()) {
      config.initial = parse_mapping(a.initial, resolve_architecture(a.arch).size());
    }
    const BenchResult result = bench(config);
    const std::string table = bench_csv(result);
    if (a.output.empty() || a.output == "-")
      std::cout << table;
    else
      write_file(a.output, table);
    if (!a.runs.empty()) write_file(a.runs, runs_csv(result));
    for (const BenchRow& row : result.rows)
      if (row.verification == "fail") return code(ExitCode::VerifyFailed);
  } catch (const std::exception& e) {
    std::cerr << "qxmap: " << e.what() << '\n';
    return code(ExitCode::Other);
  }
  return code(ExitCode::Ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maps OpenQASM 2.0 circuits onto IBM QX coupling maps with layer-wise A* search"};
  app.require_subcommand(1);

  MapArgs map_args;
  CLI::App* map = app.add_subcommand("map", "Map one circuit");
  map->add_option("--in", map_args.input, "Input QASM file")->required()->check(CLI::ExistingFile);
  map->add_option("--out", map_args.output, "Output QASM file (stdout if omitted)");
  map->add_option("--arch", map_args.arch, "qx2, qx3, qx4, qx5 or file:PATH")->capture_default_str();
  map->add_option("--strategy", map_args.strategy, "baseline, lookahead or full")
      ->check(CLI::IsMember({"baseline", "lookahead", "full"}))
      ->capture_default_str();
  map->add_option("--seed", map_args.seed, "Seed for the random initial mapping")->capture_default_str();
  map->add_option("--timeout", map_args.timeout, "Wall-clock limit in seconds (0 = none)");
  map->add_option("--verify", map_args.verify, "perm, sim, both or off")
      ->check(CLI::IsMember({"perm", "sim", "both", "off"}))
      ->capture_default_str();
  map->add_option("--stats", map_args.stats, "Append a CSV row to this file");
  map->add_option("--report", map_args.report, "Append the verification report (JSON lines)");
  map->add_option("--stdlib", map_args.stdlib, "Replacement for the bundled qelib1.inc");
  map->add_option("--initial", map_args.initial, "Initial mapping, e.g. \"q0->Q0 q1->Q1\"");
  map->add_option("--window", map_args.window, "Look-ahead layers")->capture_default_str();
  map->add_option("--node-budget", map_args.budget, "Expanded nodes allowed per layer")->capture_default_str();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Map a directory of circuits with several strategies");
  bench->add_option("--corpus", bench_args.corpus, "Directory of .qasm files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--arch", bench_args.arch, "qx2, qx3, qx4, qx5 or file:PATH")->capture_default_str();
  bench->add_option("--strategies", bench_args.strategies, "Comma-separated strategies")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--reps", bench_args.reps, "Repetitions per circuit and strategy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Base seed")->capture_default_str();
  bench->add_option("--timeout", bench_args.timeout, "Per-run wall-clock limit in seconds (0 = none)");
  bench->add_option("--verify", bench_args.verify, "perm, sim, both or off")
      ->check(CLI::IsMember({"perm", "sim", "both", "off"}))
      ->capture_default_str();
  bench->add_option("--out", bench_args.output, "Aggregate CSV (stdout if omitted)");
  bench->add_option("--runs", bench_args.runs, "Per-run CSV");
  bench->add_option("--stdlib", bench_args.stdlib, "Replacement for the bundled qelib1.inc");
  bench->add_option("--initial", bench_args.initial, "Initial mapping for baseline and lookahead");
  bench->add_option("--window", bench_args.window, "Look-ahead layers")->capture_default_str();
  bench->add_option("--node-budget", bench_args.budget, "Expanded nodes allowed per layer")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::Other);
  }
  if (map->parsed()) return run_map(map_args);
  return run_bench(bench_args);
}
