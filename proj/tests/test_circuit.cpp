// Copyright 2026 The qpoly Authors
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

#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "qpoly/circuit.hpp"
#include "qpoly/error.hpp"
#include "qpoly/io.hpp"

namespace qpoly {
namespace test_circuit {

bool mentions(const std::vector<Violation>& vs, const std::string& text) {
  for (const Violation& v : vs) {
    if (v.message.find(text) != std::string::npos) return true;
  }
  return false;
}

SCENARIO("validation reports every violation with its gate index") {
  GIVEN("an empty one-qubit circuit") {
    Circuit c;
    THEN("it is valid") { CHECK(validate(c).empty()); }
  }
  GIVEN("a CX with identical operands") {
    Circuit c;
    c.n_qubits = 3;
    c.add(Gate::ry(0, 0.1));
    c.add(Gate::cx(2, 2));
    const auto vs = validate(c);
    THEN("the violation names the index") {
      REQUIRE(vs.size() == 1);
      CHECK(vs[0].gate_index == 1u);
      CHECK(vs[0].message == "identical control/target at index 1");
    }
  }
  GIVEN("a gate beyond the register") {
    Circuit c;
    c.n_qubits = 4;
    c.add(Gate::x(5));
    const auto vs = validate(c);
    THEN("the index and qubit are reported") {
      REQUIRE(vs.size() == 1);
      CHECK(vs[0].gate_index == 0u);
      CHECK(mentions(vs, "qubit 5 out of range at index 0"));
    }
  }
  GIVEN("several problems at once") {
    Circuit c;
    c.n_qubits = 2;
    c.measured_qubit = 7;
    c.add(Gate::ry(0, std::nan("")));
    c.add(Gate::cx(1, 1));
    THEN("all of them are listed") {
      const auto vs = validate(c);
      CHECK(vs.size() == 3);
      CHECK(mentions(vs, "measured qubit 7"));
      CHECK(mentions(vs, "non-finite angle at index 0"));
    }
  }
}

TEST_CASE("depth on the gate dependency DAG") {
  Circuit c;
  c.n_qubits = 2;
  CHECK(depth(c) == 0);
  c.add(Gate::ry(0, 0.3));
  c.add(Gate::ry(1, 0.3));
  CHECK(depth(c) == 1);

  Circuit chain;
  chain.n_qubits = 2;
  chain.add(Gate::ry(0, 0.3));
  chain.add(Gate::cx(0, 1));
  chain.add(Gate::ry(1, 0.2));
  CHECK(depth(chain) == 3);
}

TEST_CASE("depth is invariant under swaps of adjacent commuting gates") {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<std::size_t> q(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c;
    c.n_qubits = 5;
    for (int i = 0; i < 30; ++i) {
      const std::size_t a = q(gen);
      std::size_t b = q(gen);
      if (a == b) b = (a + 1) % 5;
      if (i % 3 == 0) {
        c.add(Gate::cx(a, b));
      } else {
        c.add(Gate::ry(a, 0.1 * i));
      }
    }
    const std::size_t base = depth(c);
    for (std::size_t i = 0; i + 1 < c.gates.size(); ++i) {
      const Gate& g = c.gates[i];
      const Gate& h = c.gates[i + 1];
      bool share = false;
      for (std::size_t j = 0; j < g.arity(); ++j) {
        for (std::size_t k = 0; k < h.arity(); ++k) share |= g.qubits[j] == h.qubits[k];
      }
      if (share) continue;
      Circuit swapped = c;
      std::swap(swapped.gates[i], swapped.gates[i + 1]);
      CHECK(depth(swapped) == base);
    }
  }
}

TEST_CASE("resource counts") {
  Circuit c;
  c.n_qubits = 3;
  c.add(Gate::ry(1, 1.0));
  c.add(Gate::rz(1, 1.0));
  c.add(Gate::cx(1, 2));
  c.add(Gate::x(0));
  c.add(Gate::cx(2, 0));
  const ResourceCounts rc = resources(c);
  CHECK(rc.qubits == 3);
  CHECK(rc.two_qubit_gates == 2);
  CHECK(rc.single_qubit_gates == 3);
  CHECK(rc.depth == 4);
}

TEST_CASE("QASM emission") {
  SUBCASE("single X gate matches the fixture byte for byte") {
    Circuit c;
    c.add(Gate::x(0));
    CHECK(to_qasm(c) == read_text_file(QPOLY_FIXTURE_DIR "/x_measure.qasm"));
  }
  SUBCASE("angles use 17 significant digits") {
    Circuit c;
    c.n_qubits = 2;
    c.measured_qubit = 1;
    c.add(Gate::ry(0, std::acos(0.0)));
    c.add(Gate::rz(1, -0.1));
    c.add(Gate::cx(0, 1));
    const std::string text = to_qasm(c);
    CHECK(text.find("ry(1.5707963267948966) q[0];\n") != std::string::npos);
    CHECK(text.find("rz(-0.10000000000000001) q[1];\n") != std::string::npos);
    CHECK(text.find("cx q[0], q[1];\n") != std::string::npos);
    CHECK(text.substr(text.size() - 18) == "c = measure q[1];\n");
    CHECK(check_qasm(text).empty());
    CHECK(to_qasm(c) == text);
  }
  SUBCASE("invalid circuits are refused") {
    Circuit c;
    c.n_qubits = 2;
    c.add(Gate::cx(1, 1));
    CHECK_THROWS_AS(to_qasm(c), CircuitError);
  }
}

TEST_CASE("the QASM self-validator rejects malformed text") {
  const std::string good = read_text_file(QPOLY_FIXTURE_DIR "/x_measure.qasm");
  CHECK(check_qasm(good).empty());
  CHECK_FALSE(check_qasm(good.substr(0, good.size() - 1)).empty());

  std::string wrong_header = good;
  wrong_header.replace(0, 13, "OPENQASM 2.0;");
  CHECK_FALSE(check_qasm(wrong_header).empty());

  const std::string bad_index =
      "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[1] q;\nbit c;\nx q[3];\nc = measure q[0];\n";
  CHECK_FALSE(check_qasm(bad_index).empty());

  const std::string bad_angle =
      "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[1] q;\nbit c;\nry(pi/2) q[0];\n"
      "c = measure q[0];\n";
  CHECK_FALSE(check_qasm(bad_angle).empty());

  const std::string unknown_gate =
      "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[2] q;\nbit c;\nh q[0];\n"
      "c = measure q[0];\n";
  CHECK_FALSE(check_qasm(unknown_gate).empty());
}

}  // namespace test_circuit
}  // namespace qpoly
