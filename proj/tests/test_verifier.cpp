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

#include <catch_amalgamated.hpp>

#include <json.hpp>
#include <random>

#include "qxmap/emitter.hpp"
#include "qxmap/simulator.hpp"
#include "qxmap/verifier.hpp"

using namespace qxmap;

namespace {

Circuit five_cnot() {
  Circuit c;
  c.num_qubits = 6;
  c.gates = {Gate::cx(2, 3), Gate::cx(1, 0), Gate::cx(1, 4), Gate::cx(5, 3), Gate::cx(2, 3)};
  return c;
}

MappedCircuit sequential_walk() {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const Mapping start = Mapping::from_vector({0, 1, 2, 3, 14, 15}, 16);
  const std::map<std::size_t, std::vector<Swap>> routes = {
      {2, {Swap::of(1, 2), Swap::of(2, 3)}},
      {3, {Swap::of(2, 3), Swap::of(3, 14)}},
      {4, {Swap::of(3, 14), Swap::of(2, 3)}},
  };
  return assemble(sequential_plan(five_cnot(), qx3, start, routes), five_cnot(), qx3);
}

MappedCircuit full_result() {
  const CouplingMap qx3 = builtin_architecture("qx3");
  return assemble(map_circuit(five_cnot(), qx3, Strategy::Full), five_cnot(), qx3);
}

}  // namespace

TEST_CASE("mapped versions of the worked example verify") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  for (const MappedCircuit& mc : {sequential_walk(), full_result()}) {
    CHECK(check_constraints(mc, qx3).ok());
    CHECK(check_equivalence_perm(five_cnot(), mc).verdict == Verdict::Equivalent);
    const SimCheck sim = check_equivalence_sim(five_cnot(), mc);
    CHECK(sim.verdict == Verdict::Equivalent);
    CHECK(sim.max_deviation < 1e-8);
  }
}

TEST_CASE("constraint violations are reported") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  Circuit c;
  c.num_qubits = 16;
  c.gates = {Gate::cx(0, 1), Gate::cx(1, 0), Gate::cx(0, 5)};
  const ConstraintReport r = check_constraints(c, qx3);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[0].gate == 1);
  CHECK(r.violations[1].gate == 2);
}

TEST_CASE("a missing SWAP gate is caught") {
  MappedCircuit mc = sequential_walk();
  // The first SWAP block starts right after g0 and the flipped g1.
  mc.circuit.gates.erase(mc.circuit.gates.begin() + 6);
  CHECK(check_equivalence_perm(five_cnot(), mc).verdict == Verdict::NotEquivalent);
  CHECK(check_equivalence_sim(five_cnot(), mc).verdict == Verdict::NotEquivalent);
}

TEST_CASE("an injected gate is caught by simulation") {
  MappedCircuit mc = full_result();
  mc.circuit.gates.push_back(Gate::h(mc.output.physical(2)));
  CHECK(check_equivalence_sim(five_cnot(), mc).verdict == Verdict::NotEquivalent);
  CHECK(check_equivalence_perm(five_cnot(), mc).verdict == Verdict::NotEquivalent);
}

TEST_CASE("a wrong output permutation is caught") {
  MappedCircuit mc = full_result();
  std::vector<int> l2p = mc.output.logical_to_physical();
  std::swap(l2p[0], l2p[1]);
  mc.output = Mapping::from_vector(l2p, 16);
  CHECK(check_equivalence_perm(five_cnot(), mc).verdict == Verdict::NotEquivalent);
  CHECK(check_equivalence_sim(five_cnot(), mc).verdict == Verdict::NotEquivalent);
}

TEST_CASE("reordered commuting gates still verify") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  MappedCircuit mc = full_result();
  // The first two CX of the mapped layer 0 act on disjoint qubits.
  REQUIRE(mc.circuit.gates[0].is_cx());
  REQUIRE(mc.circuit.gates[1].is_cx());
  std::swap(mc.circuit.gates[0], mc.circuit.gates[1]);
  CHECK(check_equivalence_perm(five_cnot(), mc).verdict == Verdict::Equivalent);
  CHECK(check_equivalence_sim(five_cnot(), mc).verdict == Verdict::Equivalent);
}

TEST_CASE("simulation refuses oversized registers") {
  Circuit wide;
  wide.num_qubits = 25;
  for (int q = 0; q + 1 < 25; ++q) wide.gates.push_back(Gate::cx(q, q + 1));
  MappedCircuit mc;
  mc.circuit = wide;
  mc.initial = mc.output = Mapping::identity(25, 25);
  CHECK(check_equivalence_sim(wide, mc).verdict == Verdict::Inconclusive);
}

TEST_CASE("statevector: a circuit followed by its inverse is the identity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  using State = StateVector<double>;
  Eigen::Matrix<std::complex<double>, 2, Eigen::Dynamic> cols(2, 5);
  for (int j = 0; j < 5; ++j) {
    cols(0, j) = std::polar(std::cos(0.3 * j + 0.1), 0.2 * j);
    cols(1, j) = std::sin(0.3 * j + 0.1);
  }
  State s = State::product(cols);
  const State::Vector before = s.amplitudes();
  std::vector<Gate> gates;
  for (int k = 0; k < 60; ++k) {
    const int a = static_cast<int>(rng() % 5);
    const int b = (a + 1 + static_cast<int>(rng() % 4)) % 5;
    gates.push_back(k % 3 ? Gate::u(a, angle(rng), angle(rng), angle(rng)) : Gate::cx(a, b));
  }
  for (const Gate& g : gates)
    g.is_cx() ? s.apply_cx(g.q0, g.q1) : s.apply_u(g.q0, g.theta, g.phi, g.lambda);
  CHECK(s.norm() == Catch::Approx(1.0));
  for (auto it = gates.rbegin(); it != gates.rend(); ++it)
    it->is_cx() ? s.apply_cx(it->q0, it->q1) : s.apply_u(it->q0, -it->theta, -it->lambda, -it->phi);
  CHECK((s.amplitudes() - before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("JSON report line") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  VerificationReport report;
  report.constraints = check_constraints(full_result(), qx3);
  report.perm = check_equivalence_perm(five_cnot(), full_result());
  report.sim = check_equivalence_sim(five_cnot(), full_result());
  CHECK(report.passed());
  const std::string line = to_json_line(report, "five_cnot_6");
  CHECK(line.find('\n') == std::string::npos);
  const auto j = nlohmann::json::parse(line);
  CHECK(j.at("benchmark") == "five_cnot_6");
  CHECK(j.at("passed") == true);

  report.perm->verdict = Verdict::Inconclusive;
  CHECK(report.passed());
  report.sim->verdict = Verdict::NotEquivalent;
  CHECK_FALSE(report.passed());
}
