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

#include "qpoly/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "qpoly/error.hpp"

namespace qpoly {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kRy:
      return "ry";
    case GateKind::kRz:
      return "rz";
    case GateKind::kX:
      return "x";
    case GateKind::kCx:
      return "cx";
  }
  return "?";
}

std::vector<Violation> validate(const Circuit& circuit) {
  std::vector<Violation> out;
  if (circuit.n_qubits == 0) {
    out.push_back({std::nullopt, "circuit has no qubits"});
  }
  if (circuit.measured_qubit >= circuit.n_qubits) {
    out.push_back({std::nullopt, "measured qubit " + std::to_string(circuit.measured_qubit) +
                                     " out of range for " + std::to_string(circuit.n_qubits) +
                                     " qubits"});
  }
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    const std::string at = " at index " + std::to_string(i);
    for (std::size_t j = 0; j < g.arity(); ++j) {
      if (g.qubits[j] >= circuit.n_qubits) {
        out.push_back({i, "qubit " + std::to_string(g.qubits[j]) + " out of range" + at});
      }
    }
    if (g.kind == GateKind::kCx && g.qubits[0] == g.qubits[1]) {
      out.push_back({i, "identical control/target" + at});
    }
    if (g.has_angle() && !std::isfinite(g.angle)) {
      out.push_back({i, "non-finite angle" + at});
    }
    if (!g.has_angle() && g.angle != 0.0) {
      out.push_back({i, std::string(gate_name(g.kind)) + " carries an angle" + at});
    }
  }
  return out;
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

std::size_t depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.n_qubits, 0);
  std::size_t best = 0;
  for (const Gate& g : circuit.gates) {
    std::size_t l = 0;
    for (std::size_t j = 0; j < g.arity(); ++j) l = std::max(l, level[g.qubits[j]]);
    ++l;
    for (std::size_t j = 0; j < g.arity(); ++j) level[g.qubits[j]] = l;
    best = std::max(best, l);
  }
  return best;
}

ResourceCounts resources(const Circuit& circuit) {
  ResourceCounts rc;
  rc.qubits = circuit.n_qubits;
  for (const Gate& g : circuit.gates) {
    if (g.arity() == 2) {
      ++rc.two_qubit_gates;
    } else {
      ++rc.single_qubit_gates;
    }
  }
  rc.depth = depth(circuit);
  return rc;
}

namespace {

std::string format_angle(double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

}  // namespace

std::string to_qasm(const Circuit& circuit) {
  const auto violations = validate(circuit);
  if (!violations.empty()) {
    throw CircuitError("refusing to emit invalid circuit: " + format_violations(violations));
  }
  std::ostringstream os;
  os << "OPENQASM 3.0;\n";
  os << "include \"stdgates.inc\";\n";
  os << "qubit[" << circuit.n_qubits << "] q;\n";
  os << "bit c;\n";
  for (const Gate& g : circuit.gates) {
    os << gate_name(g.kind);
    if (g.has_angle()) os << '(' << format_angle(g.angle) << ')';
    os << " q[" << g.qubits[0] << ']';
    if (g.kind == GateKind::kCx) os << ", q[" << g.qubits[1] << ']';
    os << ";\n";
  }
  os << "c = measure q[" << circuit.measured_qubit << "];\n";
  return os.str();
}

std::vector<Violation> check_qasm(std::string_view text) {
  std::vector<Violation> out;
  if (text.empty() || text.back() != '\n') {
    out.push_back({std::nullopt, "text must end with a newline"});
  }
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  auto bad = [&](std::size_t line, const std::string& msg) {
    out.push_back({line, "line " + std::to_string(line + 1) + ": " + msg});
  };
  if (lines.size() < 5) {
    out.push_back({std::nullopt, "program too short"});
    return out;
  }
  if (lines[0] != "OPENQASM 3.0;") bad(0, "expected 'OPENQASM 3.0;'");
  if (lines[1] != "include \"stdgates.inc\";") bad(1, "expected stdgates include");

  static const std::regex qubit_decl(R"(^qubit\[([1-9][0-9]*)\] q;$)");
  static const std::regex bit_decl(R"(^bit c;$)");
  static const std::regex number(R"([-+]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?)");
  static const std::regex rot(R"(^(ry|rz)\(([^()]*)\) q\[([0-9]+)\];$)");
  static const std::regex pauli_x(R"(^x q\[([0-9]+)\];$)");
  static const std::regex cnot(R"(^cx q\[([0-9]+)\], q\[([0-9]+)\];$)");
  static const std::regex meas(R"(^c = measure q\[([0-9]+)\];$)");

  std::smatch m;
  std::size_t n = 0;
  if (std::regex_match(lines[2], m, qubit_decl)) {
    n = std::stoul(m[1].str());
  } else {
    bad(2, "expected qubit register declaration");
  }
  if (!std::regex_match(lines[3], bit_decl)) bad(3, "expected 'bit c;'");

  auto check_index = [&](std::size_t line, const std::string& idx) {
    if (n != 0 && std::stoul(idx) >= n) bad(line, "qubit index " + idx + " out of range");
  };
  const std::size_t last = lines.size() - 1;
  for (std::size_t i = 4; i < last; ++i) {
    const std::string& l = lines[i];
    if (std::regex_match(l, m, rot)) {
      if (!std::regex_match(m[2].str(), number)) bad(i, "malformed angle '" + m[2].str() + "'");
      check_index(i, m[3].str());
    } else if (std::regex_match(l, m, pauli_x)) {
      check_index(i, m[1].str());
    } else if (std::regex_match(l, m, cnot)) {
      check_index(i, m[1].str());
      check_index(i, m[2].str());
      if (m[1].str() == m[2].str()) bad(i, "cx with identical operands");
    } else {
      bad(i, "unrecognized statement '" + l + "'");
    }
  }
  if (std::regex_match(lines[last], m, meas)) {
    check_index(last, m[1].str());
  } else {
    bad(last, "program must end with a single measurement");
  }
  return out;
}

}  // namespace qpoly
