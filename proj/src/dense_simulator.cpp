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

#include "qpoly/dense_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpoly/error.hpp"

namespace qpoly {

namespace {

using Amp = StateVector::Amplitude;

// Applies the 2x2 matrix [[a, b], [c, d]] to qubit q.
void apply_1q(std::vector<Amp>& v, std::size_t q, Amp a, Amp b, Amp c, Amp d) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const Amp lo = v[i];
    const Amp hi = v[i | bit];
    v[i] = a * lo + b * hi;
    v[i | bit] = c * lo + d * hi;
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, Amp{0.0, 0.0}) {
  amps_[0] = 1.0;
}

void StateVector::apply(const Gate& g) {
  const std::size_t q = g.qubits[0];
  switch (g.kind) {
    case GateKind::kRy: {
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      apply_1q(amps_, q, c, -s, s, c);
      break;
    }
    case GateKind::kRz: {
      const Amp lo = std::polar(1.0, -g.angle / 2);
      const Amp hi = std::polar(1.0, g.angle / 2);
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? hi : lo;
      break;
    }
    case GateKind::kX: {
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
      }
      break;
    }
    case GateKind::kCx: {
      const std::size_t cbit = std::size_t{1} << g.qubits[0];
      const std::size_t tbit = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
      }
      break;
    }
  }
}

void StateVector::apply_pauli(std::size_t q, Pauli p) {
  const Amp i1{0.0, 1.0};
  switch (p) {
    case Pauli::kX:
      apply_1q(amps_, q, 0.0, 1.0, 1.0, 0.0);
      break;
    case Pauli::kY:
      apply_1q(amps_, q, 0.0, -i1, i1, 0.0);
      break;
    case Pauli::kZ:
      apply_1q(amps_, q, 1.0, 0.0, 0.0, -1.0);
      break;
  }
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const Amp& a : amps_) acc += std::norm(a);
  return acc;
}

namespace {

void check_runnable(const Circuit& circuit, std::size_t cap) {
  const auto violations = validate(circuit);
  if (!violations.empty()) throw CircuitError(format_violations(violations));
  if (circuit.n_qubits > cap) {
    throw CapacityError("circuit needs " + std::to_string(circuit.n_qubits) +
                        " qubits but the dense simulator is capped at " + std::to_string(cap) +
                        "; use the windowed (stream) simulator for wide circuits");
  }
}

}  // namespace

StateVector run_statevector(const Circuit& circuit, std::size_t qubit_cap) {
  return run_statevector(circuit, {}, qubit_cap);
}

StateVector run_statevector(const Circuit& circuit, std::span<const PauliInsertion> insertions,
                            std::size_t qubit_cap) {
  check_runnable(circuit, qubit_cap);
  StateVector state(circuit.n_qubits);
  auto next = insertions.begin();
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    state.apply(circuit.gates[i]);
    for (; next != insertions.end() && next->after_gate == i; ++next) {
      state.apply_pauli(next->qubit, next->pauli);
    }
  }
  return state;
}

double expect_z(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.n_qubits()) throw InvalidArgument("qubit index out of range");
  const std::size_t bit = std::size_t{1} << qubit;
  const auto amps = state.amplitudes();
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    acc += (i & bit) ? -p : p;
  }
  return std::clamp(acc, -1.0, 1.0);
}

ShotOutcome sample_output(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                          const std::optional<NoiseModel>& noise, std::size_t qubit_cap) {
  if (shots == 0) throw InvalidArgument("shot count must be >= 1");
  if (!noise || noise->is_noiseless()) {
    const double z = expect_z(run_statevector(circuit, qubit_cap), circuit.measured_qubit);
    return sample_from_expectation(z, shots, seed);
  }
  check_runnable(circuit, qubit_cap);
  return sample_trajectories(circuit, shots, seed, *noise,
                             [&](std::span<const PauliInsertion> ins) {
                               return expect_z(run_statevector(circuit, ins, qubit_cap),
                                               circuit.measured_qubit);
                             });
}

}  // namespace qpoly
