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

#include <cmath>
#include <filesystem>
#include <numbers>

#include "qxmap/harness.hpp"
#include "qxmap/qasm.hpp"

using namespace qxmap;

namespace {

constexpr double kPi = std::numbers::pi;

std::string program(const std::string& body) {
  return "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n" + body;
}

}  // namespace

TEST_CASE("the three-qubit example flattens to five elementary gates") {
  const Circuit c = load_qasm(read_file(std::string(QXMAP_CORPUS) + "/toy_3.qasm"));
  REQUIRE(c.num_qubits == 3);
  REQUIRE(c.size() == 5);
  CHECK(c.gates[0].is_h());
  CHECK(c.gates[1] == Gate::cx(0, 1));
  CHECK(c.gates[2].is_u());
  CHECK(c.gates[2].q0 == 2);
  CHECK(c.gates[2].lambda == Catch::Approx(kPi / 4));
  CHECK(c.gates[3] == Gate::cx(1, 2));
  CHECK(c.gates[4] == Gate::cx(0, 2));
  CHECK(depth(c) == 4);
}

TEST_CASE("the five-CNOT example has three layers") {
  const Circuit c = load_qasm(read_file(std::string(QXMAP_CORPUS) + "/five_cnot_6.qasm"));
  CHECK(c.num_qubits == 6);
  CHECK(c.cx_count() == 5);
  CHECK(depth(c) == 3);
}

TEST_CASE("every shipped circuit parses") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QXMAP_CORPUS)) {
    if (entry.path().extension() != ".qasm") continue;
    INFO(entry.path().string());
    const Circuit c = load_qasm(read_file(entry.path().string()));
    CHECK_NOTHROW(c.validate());
    CHECK(c.num_qubits <= 14);
    ++files;
  }
  CHECK(files >= 15);
}

TEST_CASE("standard gates expand to the expected angles") {
  const Circuit c = load_qasm(program("qreg q[2];\nu3(0.1,0.2,0.3) q[0];\nu1(0.5) q[1];\nrz(0.25) q[0];\n"));
  REQUIRE(c.size() == 3);
  CHECK(c.gates[0] == Gate::u(0, 0.1, 0.2, 0.3));
  CHECK(c.gates[1] == Gate::u(1, 0.0, 0.0, 0.5));
  CHECK(c.gates[2] == Gate::u(0, 0.0, 0.0, 0.25));
}

TEST_CASE("swap and ccx expand through the bundled library") {
  const Circuit s = load_qasm(program("qreg q[2];\nswap q[0],q[1];\n"));
  CHECK(s.size() == 3);
  CHECK(s.cx_count() == 3);
  const Circuit t = load_qasm(program("qreg q[3];\nccx q[0],q[1],q[2];\n"));
  CHECK(t.cx_count() == 6);
  CHECK(t.size() == 15);
}

TEST_CASE("user gates with parameters and expressions") {
  const Circuit c = load_qasm(program(
      "gate foo(a,b) x,y { U(a*2, -b, pi/2) x; CX x,y; }\n"
      "qreg q[3];\nfoo(0.5, sin(0)) q[2],q[0];\n"));
  REQUIRE(c.size() == 2);
  CHECK(c.gates[0].theta == Catch::Approx(1.0));
  CHECK(c.gates[0].phi == Catch::Approx(0.0));
  CHECK(c.gates[0].lambda == Catch::Approx(kPi / 2));
  CHECK(c.gates[0].q0 == 2);
  CHECK(c.gates[1] == Gate::cx(2, 0));
}

TEST_CASE("registers concatenate and broadcast") {
  const Circuit c = load_qasm(program("qreg a[2];\nqreg b[2];\ncx a,b;\nh b;\n"));
  REQUIRE(c.num_qubits == 4);
  REQUIRE(c.size() == 4);
  CHECK(c.gates[0] == Gate::cx(0, 2));
  CHECK(c.gates[1] == Gate::cx(1, 3));
  CHECK(c.gates[2].is_h());
  CHECK(c.gates[3].q0 == 3);
}

TEST_CASE("barriers and terminal measurements") {
  const Circuit c = load_qasm(program("qreg q[2];\ncreg c[2];\nh q[0];\nbarrier q;\ncx q[0],q[1];\nmeasure q -> c;\n"));
  CHECK(c.barriers == std::vector<std::size_t>{1});
  REQUIRE(c.measurements.size() == 2);
  CHECK(c.measurements[1].qubit == 1);
  CHECK(c.measurements[1].creg == "c");
  CHECK(c.cregs.size() == 1);
}

TEST_CASE("unsupported constructs are named") {
  CHECK_THROWS_AS(load_qasm(program("qreg q[1];\ncreg c[1];\nif(c==1) x q[0];\n")), UnsupportedConstruct);
  CHECK_THROWS_AS(load_qasm(program("qreg q[1];\nreset q[0];\n")), UnsupportedConstruct);
  CHECK_THROWS_AS(load_qasm(program("opaque g a;\nqreg q[1];\n")), UnsupportedConstruct);
  CHECK_THROWS_AS(load_qasm(program("qreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\nh q[0];\n")),
                  UnsupportedConstruct);
  CHECK_THROWS_AS(load_qasm("OPENQASM 3.0;\nqubit q;\n"), UnsupportedConstruct);
}

TEST_CASE("syntax errors carry a location") {
  try {
    load_qasm("OPENQASM 2.0;\nqreg q[2];\nCX q[0] q[1];\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().line == 3);
  }
  CHECK_THROWS_AS(load_qasm(program("qreg q[2];\ncx q[0],q[5];\n")), ParseError);
  CHECK_THROWS_AS(load_qasm(program("qreg q[2];\ncx r[0],q[1];\n")), ParseError);
  CHECK_THROWS_AS(load_qasm(program("qreg q[2];\nqreg q[3];\n")), ParseError);
  CHECK_THROWS_AS(load_qasm("OPENQASM 2.0;\nqreg q[1];\nU(0,0,0 q[0];\n"), ParseError);
}

TEST_CASE("flattening errors") {
  CHECK_THROWS_AS(load_qasm(program("qreg q[2];\nnope q[0];\n")), FlattenError);
  CHECK_THROWS_AS(load_qasm(program("qreg q[2];\ncx q[0];\n")), FlattenError);
  CHECK_THROWS_AS(load_qasm(program("qreg q[2];\ncx q[1],q[1];\n")), FlattenError);
  CHECK_THROWS_AS(load_qasm(program("qreg a[2];\nqreg b[3];\ncx a,b;\n")), FlattenError);
  CHECK_THROWS_AS(load_qasm(program("qreg q[1];\nrz(1/0) q[0];\n")), FlattenError);
}

TEST_CASE("a replacement standard library is honoured") {
  ParseOptions options;
  options.stdlib = "gate h a { U(0,0,0) a; }\n";
  const Circuit c = load_qasm(program("qreg q[1];\nh q[0];\n"), options);
  REQUIRE(c.size() == 1);
  CHECK(c.gates[0] == Gate::u(0, 0.0, 0.0, 0.0));
  CHECK_THROWS_AS(load_qasm(program("qreg q[1];\nx q[0];\n"), options), FlattenError);
}

TEST_CASE("comments and whitespace are ignored") {
  const Circuit a = load_qasm(program("qreg q[2];\ncx q[0],q[1];\n"));
  const Circuit b = load_qasm("// lead\nOPENQASM 2.0;  include \"qelib1.inc\";\n qreg q [ 2 ] ; // x\n cx q[0] , q[1];");
  CHECK(a == b);
}
