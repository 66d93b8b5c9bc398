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

/// \file dense_simulator.hpp
/// \brief Reference statevector simulator.
///
/// Qubit k is bit k of the basis-state index. Gates follow the usual
/// conventions: Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] and
/// Rz(t) = diag(exp(-i t/2), exp(i t/2)).
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qpoly/circuit.hpp"
#include "qpoly/sampling.hpp"

namespace qpoly {

inline constexpr std::size_t kDefaultQubitCap = 26;

class StateVector {
 public:
  using Amplitude = std::complex<double>;

  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }

  void apply(const Gate& gate);
  void apply_pauli(std::size_t qubit, Pauli pauli);

  double norm_squared() const;

 private:
  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

/// Runs the circuit from |0...0>. Throws CircuitError for an invalid circuit
/// and CapacityError when n_qubits exceeds `qubit_cap`.
StateVector run_statevector(const Circuit& circuit, std::size_t qubit_cap = kDefaultQubitCap);

/// Same, applying the given Pauli insertions (sorted by gate index).
StateVector run_statevector(const Circuit& circuit, std::span<const PauliInsertion> insertions,
                            std::size_t qubit_cap = kDefaultQubitCap);

/// <Z_q>, in [-1, 1].
double expect_z(const StateVector& state, std::size_t qubit);

/// Measures the circuit's output qubit `shots` times. Without noise (or with
/// an all-zero model) this is one exact marginal plus a binomial draw;
/// otherwise each shot is an independent noisy trajectory.
ShotOutcome sample_output(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                          const std::optional<NoiseModel>& noise = std::nullopt,
                          std::size_t qubit_cap = kDefaultQubitCap);

}  // namespace qpoly
