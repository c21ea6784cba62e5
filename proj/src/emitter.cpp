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

#include "qxmap/emitter.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>
#include <sstream>

namespace qxmap {

std::vector<Gate> decompose_swap(int a, int b, const CouplingMap& map) {
  int c = a;
  int t = b;
  if (!map.has_edge(a, b)) {
    if (!map.has_edge(b, a))
      throw MappingError("cannot swap non-adjacent Q" + std::to_string(a) + ",Q" + std::to_string(b));
    std::swap(c, t);
  }
  return {Gate::cx(c, t), Gate::h(c), Gate::h(t), Gate::cx(c, t), Gate::h(c), Gate::h(t), Gate::cx(c, t)};
}

std::vector<Gate> emit_cnot(CnotPair cx, const Mapping& mapping, const CouplingMap& map) {
  const int c = mapping.physical(cx.control);
  const int t = mapping.physical(cx.target);
  if (c == kUnmapped || t == kUnmapped) throw MappingError("CX operand is unmapped");
  if (map.has_edge(c, t)) return {Gate::cx(c, t)};
  if (!map.has_edge(t, c))
    throw MappingError("CX q" + std::to_string(cx.control) + ",q" + std::to_string(cx.target) + " sits on non-adjacent Q" +
                       std::to_string(c) + ",Q" + std::to_string(t));
  return {Gate::h(c), Gate::h(t), Gate::cx(t, c), Gate::h(c), Gate::h(t)};
}

MappedCircuit assemble(const MappedPlan& plan, const Circuit& circuit, const CouplingMap& map) {
  if (!plan.initial.is_total() || plan.initial.logical_count() != circuit.num_qubits ||
      plan.initial.physical_count() != map.size())
    throw MappingError("plan does not match circuit and coupling map");
  MappedCircuit out;
  out.initial = plan.initial;
  out.circuit.num_qubits = map.size();
  out.circuit.cregs = circuit.cregs;
  std::vector<Gate>& gates = out.circuit.gates;

  Mapping current = plan.initial;
  for (const PlanStep& step : plan.steps) {
    if (step.barrier_before) out.circuit.barriers.push_back(gates.size());
    for (const SwapStep& s : step.pi.steps) {
      for (const Swap& sw : s) {
        const std::vector<Gate> block = decompose_swap(sw.a, sw.b, map);
        gates.insert(gates.end(), block.begin(), block.end());
        current.swap_physical(sw.a, sw.b);
        ++out.stats.swaps;
      }
    }
    for (std::size_t i : step.gates) {
      const Gate& g = circuit.gates[i];
      if (g.is_u()) {
        gates.push_back(Gate::u(current.physical(g.q0), g.theta, g.phi, g.lambda));
        ++out.stats.single_qubit;
        continue;
      }
      const std::vector<Gate> block = emit_cnot({g.control(), g.target()}, current, map);
      gates.insert(gates.end(), block.begin(), block.end());
      ++(block.size() == 1 ? out.stats.native_cx : out.stats.reversed_cx);
    }
  }
  if (plan.trailing_barrier) out.circuit.barriers.push_back(gates.size());
  for (const Measurement& m : circuit.measurements)
    out.circuit.measurements.push_back({current.physical(m.qubit), m.creg, m.bit});
  out.output = current;
  return out;
}

namespace {

std::string angle(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string qreg_name(const Circuit& c) {
  std::string name = "q";
  while (std::any_of(c.cregs.begin(), c.cregs.end(), [&](const ClassicalRegister& r) { return r.name == name; }))
    name += '_';
  return name;
}

}  // namespace

std::string to_qasm(const MappedCircuit& mc) {
  const Circuit& c = mc.circuit;
  const std::string q = qreg_name(c);
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "// initial: " << to_string(mc.initial) << '\n';
  out << "// output-perm: " << to_string(mc.output) << '\n';
  out << "qreg " << q << '[' << c.num_qubits << "];\n";
  for (const ClassicalRegister& r : c.cregs) out << "creg " << r.name << '[' << r.width << "];\n";

  auto barrier = c.barriers.begin();
  for (std::size_t i = 0; i <= c.gates.size(); ++i) {
    for (; barrier != c.barriers.end() && *barrier == i; ++barrier) out << "barrier " << q << ";\n";
    if (i == c.gates.size()) break;
    const Gate& g = c.gates[i];
    if (g.is_cx())
      out << "CX " << q << '[' << g.q0 << "]," << q << '[' << g.q1 << "];\n";
    else if (g.is_h())
      out << "h " << q << '[' << g.q0 << "];\n";
    else
      out << "U(" << angle(g.theta) << ',' << angle(g.phi) << ',' << angle(g.lambda) << ") " << q << '[' << g.q0
          << "];\n";
  }
  for (const Measurement& m : c.measurements)
    out << "measure " << q << '[' << m.qubit << "] -> " << m.creg << '[' << m.bit << "];\n";
  return out.str();
}

Mapping parse_mapping(std::string_view text, int n, int m) {
  static const std::regex entry(R"(q(\d+)\s*->\s*Q(\d+))");
  std::string s(text);
  std::vector<int> l2p(static_cast<std::size_t>(n), kUnmapped);
  std::string rest = std::regex_replace(s, entry, "");
  if (rest.find_first_not_of(" \t,;\r\n") != std::string::npos)
    throw MappingError("malformed mapping '" + s + "'");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), entry); it != std::sregex_iterator(); ++it) {
    const int q = std::stoi((*it)[1]);
    const int p = std::stoi((*it)[2]);
    if (q >= n) throw MappingError("logical qubit q" + std::to_string(q) + " out of range");
    if (l2p[static_cast<std::size_t>(q)] != kUnmapped) throw MappingError("q" + std::to_string(q) + " mapped twice");
    l2p[static_cast<std::size_t>(q)] = p;
  }
  return Mapping::from_vector(l2p, m);
}

namespace {

int logical_width(const std::string& s) {
  static const std::regex logical(R"(q(\d+)\s*->)");
  int n = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), logical); it != std::sregex_iterator(); ++it)
    n = std::max(n, std::stoi((*it)[1]) + 1);
  return n;
}

}  // namespace

Mapping parse_mapping(std::string_view text, int m) {
  return parse_mapping(text, logical_width(std::string(text)), m);
}

MappedCircuit read_mapped_qasm(std::string_view text, const ParseOptions& options) {
  MappedCircuit mc;
  mc.circuit = load_qasm(text, options);
  std::string initial;
  std::string output;
  bool have_initial = false;
  bool have_output = false;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("// initial:", 0) == 0) {
      initial = line.substr(11);
      have_initial = true;
    } else if (line.rfind("// output-perm:", 0) == 0) {
      output = line.substr(15);
      have_output = true;
    }
  }
  if (!have_initial || !have_output) throw MappingError("missing '// initial:' or '// output-perm:' line");
  const int n = std::max(logical_width(initial), logical_width(output));
  mc.initial = parse_mapping(initial, n, mc.circuit.num_qubits);
  mc.output = parse_mapping(output, n, mc.circuit.num_qubits);
  for (const Gate& g : mc.circuit.gates) {
    if (g.is_cx())
      ++mc.stats.native_cx;
    else
      ++mc.stats.single_qubit;
  }
  return mc;
}

}  // namespace qxmap
