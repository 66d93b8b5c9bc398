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

/// \file circuit.hpp
/// \brief Flat gate-level IR shared by the compiler and both simulators.
///
/// The gate set is deliberately tiny: Ry, Rz, X and CX. A Circuit carries
/// one designated measured qubit whose Pauli-Z expectation is the output.
/// Circuits are plain values; construction never validates, so validate()
/// can report every problem at once.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpoly {

enum class GateKind { kRy, kRz, kX, kCx };

struct Gate {
  GateKind kind = GateKind::kX;
  /// qubits[0] is the only qubit of a 1-qubit gate; for CX it is the
  /// control and qubits[1] the target.
  std::array<std::size_t, 2> qubits{0, 0};
  double angle = 0.0;  ///< radians; meaningful for Ry/Rz only

  static Gate ry(std::size_t q, double theta) { return {GateKind::kRy, {q, q}, theta}; }
  static Gate rz(std::size_t q, double theta) { return {GateKind::kRz, {q, q}, theta}; }
  static Gate x(std::size_t q) { return {GateKind::kX, {q, q}, 0.0}; }
  static Gate cx(std::size_t control, std::size_t target) {
    return {GateKind::kCx, {control, target}, 0.0};
  }

  std::size_t arity() const { return kind == GateKind::kCx ? 2 : 1; }
  bool has_angle() const { return kind == GateKind::kRy || kind == GateKind::kRz; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string_view gate_name(GateKind kind);

struct Circuit {
  std::size_t n_qubits = 1;
  std::vector<Gate> gates;
  std::size_t measured_qubit = 0;

  Circuit() = default;
  explicit Circuit(std::size_t n, std::size_t measured = 0) : n_qubits(n), measured_qubit(measured) {}

  Circuit& add(const Gate& g) {
    gates.push_back(g);
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct Violation {
  std::optional<std::size_t> gate_index;  ///< empty for circuit-level problems
  std::string message;
};

/// Every invariant violation; empty means the circuit is valid.
std::vector<Violation> validate(const Circuit& circuit);

/// Joins violations into one human-readable report.
std::string format_violations(const std::vector<Violation>& violations);

/// Longest chain of the dependency DAG; two gates conflict iff they share a
/// qubit and every gate counts as one layer.
std::size_t depth(const Circuit& circuit);

struct ResourceCounts {
  std::size_t qubits = 0;
  std::size_t two_qubit_gates = 0;
  std::size_t single_qubit_gates = 0;
  std::size_t depth = 0;

  friend bool operator==(const ResourceCounts&, const ResourceCounts&) = default;
};

ResourceCounts resources(const Circuit& circuit);

/// Emits OpenQASM 3.0 text. Angles use 17 significant digits; output is
/// byte-stable. Throws CircuitError carrying the validation report when the
/// circuit is invalid.
std::string to_qasm(const Circuit& circuit);

/// Line-level grammar check for the subset of OpenQASM 3.0 that to_qasm
/// emits. Returns problems as violations whose gate_index is the 0-based line.
std::vector<Violation> check_qasm(std::string_view text);

}  // namespace qpoly
