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

#include "qxmap/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qxmap/simulator.hpp"

namespace qxmap {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Equivalent:
      return "equivalent";
    case Verdict::NotEquivalent:
      return "not-equivalent";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

ConstraintReport check_constraints(const Circuit& circuit, const CouplingMap& map) {
  ConstraintReport report;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    if (!g.is_cx()) continue;
    const bool in_range = g.q0 >= 0 && g.q1 >= 0 && g.q0 < map.size() && g.q1 < map.size();
    if (!in_range || !map.has_edge(g.q0, g.q1)) report.violations.push_back({i, g.q0, g.q1});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Permutation replay

namespace {

class Replay {
 public:
  Replay(const Circuit& original, const MappedCircuit& mc, std::size_t budget)
      : orig_(original), mc_(mc), gates_(mc.circuit.gates), budget_(budget) {
    queues_.resize(static_cast<std::size_t>(original.num_qubits));
    for (std::size_t j = 0; j < original.gates.size(); ++j) {
      const Gate& g = original.gates[j];
      queues_[static_cast<std::size_t>(g.q0)].push_back(j);
      if (g.is_cx()) queues_[static_cast<std::size_t>(g.q1)].push_back(j);
    }
    head_.assign(queues_.size(), 0);
    tracker_ = mc.initial.physical_to_logical();
  }

  PermCheck run() {
    PermCheck out;
    if (mc_.initial.logical_count() != orig_.num_qubits || mc_.output.logical_count() != orig_.num_qubits ||
        static_cast<int>(tracker_.size()) != mc_.circuit.num_qubits) {
      out.verdict = Verdict::NotEquivalent;
      out.message = "qubit counts disagree";
      return out;
    }
    for (const Gate& g : gates_) {
      if (g.q0 < 0 || g.q0 >= mc_.circuit.num_qubits || (g.is_cx() && (g.q1 < 0 || g.q1 >= mc_.circuit.num_qubits))) {
        out.verdict = Verdict::NotEquivalent;
        out.message = "operand out of range";
        return out;
      }
    }

    std::vector<Frame> stack;
    std::size_t i = 0;
    int first_choice = 0;
    std::size_t farthest = 0;
    for (;;) {
      if (++steps_ > budget_) {
        out.verdict = Verdict::Inconclusive;
        out.message = "step budget exhausted";
        out.steps = steps_;
        return out;
      }
      farthest = std::max(farthest, i);
      if (i == gates_.size() && finished()) {
        out.verdict = Verdict::Equivalent;
        out.steps = steps_;
        return out;
      }
      Frame frame;
      bool advanced = false;
      if (i < gates_.size()) {
        for (int choice = first_choice; choice < 3 && !advanced; ++choice) advanced = attempt(i, choice, frame);
      }
      if (advanced) {
        stack.push_back(frame);
        i += frame.length;
        first_choice = 0;
        continue;
      }
      if (stack.empty()) {
        out.verdict = Verdict::NotEquivalent;
        std::ostringstream msg;
        msg << "no consistent reading past emitted gate " << farthest;
        out.message = msg.str();
        out.steps = steps_;
        return out;
      }
      frame = stack.back();
      stack.pop_back();
      undo(frame);
      i = frame.start;
      first_choice = frame.choice + 1;
    }
  }

 private:
  struct Frame {
    std::size_t start = 0;
    std::size_t length = 0;
    int choice = 0;
    int swap_a = -1;
    int swap_b = -1;
    int advanced[2] = {-1, -1};
  };

  bool is_h_pair(std::size_t i, int x, int y) const {
    if (i + 1 >= gates_.size()) return false;
    const Gate& a = gates_[i];
    const Gate& b = gates_[i + 1];
    return a.is_h() && b.is_h() && ((a.q0 == x && b.q0 == y) || (a.q0 == y && b.q0 == x));
  }

  static bool is_cx(const Gate& g, int c, int t) { return g.is_cx() && g.q0 == c && g.q1 == t; }

  /// Consumes original gate `j` if it is next on every logical operand.
  bool consume(const Gate& logical, Frame& frame) {
    const auto l0 = static_cast<std::size_t>(logical.q0);
    if (logical.q0 < 0 || head_[l0] >= queues_[l0].size()) return false;
    const std::size_t j = queues_[l0][head_[l0]];
    if (logical.is_cx()) {
      const auto l1 = static_cast<std::size_t>(logical.q1);
      if (logical.q1 < 0 || head_[l1] >= queues_[l1].size() || queues_[l1][head_[l1]] != j) return false;
    }
    const Gate& g = orig_.gates[j];
    if (g != logical) return false;
    ++head_[l0];
    frame.advanced[0] = logical.q0;
    if (logical.is_cx()) {
      ++head_[static_cast<std::size_t>(logical.q1)];
      frame.advanced[1] = logical.q1;
    }
    return true;
  }

  int at(int p) const { return tracker_[static_cast<std::size_t>(p)]; }

  bool attempt(std::size_t i, int choice, Frame& frame) {
    frame = Frame{};
    frame.start = i;
    frame.choice = choice;
    const Gate& g = gates_[i];
    if (choice == 0) {
      if (!g.is_cx() || i + 6 >= gates_.size()) return false;
      const int x = g.q0;
      const int y = g.q1;
      if (!is_h_pair(i + 1, x, y) || !is_cx(gates_[i + 3], x, y) || !is_h_pair(i + 4, x, y) ||
          !is_cx(gates_[i + 6], x, y))
        return false;
      std::swap(tracker_[static_cast<std::size_t>(x)], tracker_[static_cast<std::size_t>(y)]);
      frame.swap_a = x;
      frame.swap_b = y;
      frame.length = 7;
      return true;
    }
    if (choice == 1) {
      if (!g.is_h() || i + 4 >= gates_.size()) return false;
      const Gate& mid = gates_[i + 2];
      if (!mid.is_cx() || !is_h_pair(i, mid.q0, mid.q1) || !is_h_pair(i + 3, mid.q0, mid.q1)) return false;
      if (!consume(Gate::cx(at(mid.q1), at(mid.q0)), frame)) return false;
      frame.length = 5;
      return true;
    }
    const Gate logical = g.is_cx() ? Gate::cx(at(g.q0), at(g.q1)) : Gate::u(at(g.q0), g.theta, g.phi, g.lambda);
    if (!consume(logical, frame)) return false;
    frame.length = 1;
    return true;
  }

  void undo(const Frame& frame) {
    if (frame.swap_a >= 0)
      std::swap(tracker_[static_cast<std::size_t>(frame.swap_a)], tracker_[static_cast<std::size_t>(frame.swap_b)]);
    for (int q : frame.advanced)
      if (q >= 0) --head_[static_cast<std::size_t>(q)];
  }

  bool finished() const {
    for (std::size_t q = 0; q < queues_.size(); ++q)
      if (head_[q] != queues_[q].size()) return false;
    for (int q = 0; q < orig_.num_qubits; ++q) {
      const int p = mc_.output.physical(q);
      if (p == kUnmapped || at(p) != q) return false;
    }
    std::map<std::pair<std::string, int>, int> expected;
    for (const Measurement& m : orig_.measurements) expected[{m.creg, m.bit}] = m.qubit;
    if (expected.size() != mc_.circuit.measurements.size()) return false;
    for (const Measurement& m : mc_.circuit.measurements) {
      const auto it = expected.find({m.creg, m.bit});
      if (it == expected.end() || at(m.qubit) != it->second) return false;
    }
    return true;
  }

  const Circuit& orig_;
  const MappedCircuit& mc_;
  const std::vector<Gate>& gates_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<std::vector<std::size_t>> queues_;
  std::vector<std::size_t> head_;
  std::vector<int> tracker_;
};

}  // namespace

PermCheck check_equivalence_perm(const Circuit& original, const MappedCircuit& mc, std::size_t step_budget) {
  return Replay(original, mc, step_budget).run();
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

using State = StateVector<double>;

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void run_gates(State& state, const std::vector<Gate>& gates, const std::vector<int>& index) {
  for (const Gate& g : gates) {
    if (g.is_cx())
      state.apply_cx(index[static_cast<std::size_t>(g.q0)], index[static_cast<std::size_t>(g.q1)]);
    else
      state.apply_u(index[static_cast<std::size_t>(g.q0)], g.theta, g.phi, g.lambda);
  }
}

}  // namespace

SimCheck check_equivalence_sim(const Circuit& original, const MappedCircuit& mc, const SimOptions& options) {
  SimCheck out;
  const int n = original.num_qubits;
  const int m = mc.circuit.num_qubits;
  if (mc.initial.logical_count() != n || mc.output.logical_count() != n || !mc.initial.is_total() ||
      !mc.output.is_total()) {
    out.verdict = Verdict::NotEquivalent;
    out.message = "mappings do not cover the original qubits";
    return out;
  }

  std::vector<bool> touched(static_cast<std::size_t>(m), false);
  for (const Gate& g : mc.circuit.gates) {
    touched[static_cast<std::size_t>(g.q0)] = true;
    if (g.is_cx()) touched[static_cast<std::size_t>(g.q1)] = true;
  }
  for (int q = 0; q < n; ++q) {
    touched[static_cast<std::size_t>(mc.initial.physical(q))] = true;
    touched[static_cast<std::size_t>(mc.output.physical(q))] = true;
  }
  std::vector<int> index(static_cast<std::size_t>(m), -1);
  int k = 0;
  for (int p = 0; p < m; ++p)
    if (touched[static_cast<std::size_t>(p)]) index[static_cast<std::size_t>(p)] = k++;
  out.simulated_qubits = k;
  if (k > options.max_qubits || n > options.max_qubits) {
    out.verdict = Verdict::Inconclusive;
    out.message = std::to_string(k) + " qubits exceed the simulation limit of " + std::to_string(options.max_qubits);
    return out;
  }

  std::vector<int> identity(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) identity[static_cast<std::size_t>(q)] = q;
  std::vector<Eigen::Index> out_bit(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q)
    out_bit[static_cast<std::size_t>(q)] = Eigen::Index{1} << index[static_cast<std::size_t>(mc.output.physical(q))];

  std::mt19937_64 rng(options.seed);
  for (int trial = 0; trial < options.trials; ++trial) {
    Eigen::Matrix<State::Complex, 2, Eigen::Dynamic> logical(2, n);
    for (int q = 0; q < n; ++q) {
      const double theta = std::acos(1.0 - 2.0 * unit(rng));
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      logical(0, q) = std::cos(theta / 2);
      logical(1, q) = std::polar(std::sin(theta / 2), phi);
    }
    Eigen::Matrix<State::Complex, 2, Eigen::Dynamic> physical(2, k);
    physical.row(0).setOnes();
    physical.row(1).setZero();
    for (int q = 0; q < n; ++q)
      physical.col(index[static_cast<std::size_t>(mc.initial.physical(q))]) = logical.col(q);

    State reference = State::product(logical);
    run_gates(reference, original.gates, identity);
    State mapped = State::product(physical);
    run_gates(mapped, mc.circuit.gates, index);

    State::Vector expected = State::Vector::Zero(mapped.amplitudes().size());
    for (Eigen::Index x = 0; x < reference.amplitudes().size(); ++x) {
      Eigen::Index y = 0;
      for (int q = 0; q < n; ++q)
        if ((x >> q) & 1) y |= out_bit[static_cast<std::size_t>(q)];
      expected(y) = reference.amplitudes()(x);
    }
    const State::Complex overlap = expected.dot(mapped.amplitudes());
    double deviation = 0.0;
    if (std::abs(overlap) < 1e-12) {
      deviation = 2.0;
    } else {
      const State::Complex phase = overlap / std::abs(overlap);
      deviation = (mapped.amplitudes() - phase * expected).cwiseAbs().maxCoeff();
    }
    out.max_deviation = std::max(out.max_deviation, deviation);
    ++out.trials;
    if (deviation > options.tolerance) {
      out.verdict = Verdict::NotEquivalent;
      out.message = "trial " + std::to_string(trial) + " deviates by " + std::to_string(deviation);
      return out;
    }
  }
  out.verdict = Verdict::Equivalent;
  return out;
}

// ---------------------------------------------------------------------------
// Reports

bool VerificationReport::passed() const {
  if (!constraints.ok()) return false;
  if (perm && perm->verdict == Verdict::NotEquivalent) return false;
  if (sim && sim->verdict == Verdict::NotEquivalent) return false;
  const bool perm_ok = perm && perm->verdict == Verdict::Equivalent;
  const bool sim_ok = sim && sim->verdict == Verdict::Equivalent;
  if (!perm && !sim) return true;
  return perm_ok || sim_ok;
}

std::string to_json_line(const VerificationReport& report, const std::string& benchmark) {
  nlohmann::json j;
  if (!benchmark.empty()) j["benchmark"] = benchmark;
  nlohmann::json violations = nlohmann::json::array();
  for (const Violation& v : report.constraints.violations)
    violations.push_back({{"gate", v.gate}, {"control", v.control}, {"target", v.target}});
  j["constraints"] = {{"ok", report.constraints.ok()}, {"violations", violations}};
  if (report.perm)
    j["perm"] = {{"verdict", to_string(report.perm->verdict)},
                 {"message", report.perm->message},
                 {"steps", report.perm->steps}};
  if (report.sim)
    j["sim"] = {{"verdict", to_string(report.sim->verdict)},
                {"message", report.sim->message},
                {"max_deviation", report.sim->max_deviation},
                {"qubits", report.sim->simulated_qubits},
                {"trials", report.sim->trials}};
  j["passed"] = report.passed();
  return j.dump();
}

}  // namespace qxmap
