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

/// \file stream_simulator.hpp
/// \brief Windowed density-matrix simulator with qubit retirement.
///
/// Gates are swept in program order. A qubit joins the simulated window (as
/// |0><0|) at its first gate and is traced out right after its last one;
/// the measured qubit stays live until the end. Memory therefore depends on
/// the widest set of simultaneously live qubits, not on the circuit width,
/// which lets forward-order programs of degree 35 (36 qubits) run in a
/// 16 x 16 density matrix.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qpoly/circuit.hpp"
#include "qpoly/sampling.hpp"

namespace qpoly {

inline constexpr std::size_t kDefaultWindowCap = 8;
inline constexpr std::size_t kMaxWindowCap = 12;

struct RetirementSchedule {
  /// Gate index at which each qubit joins / leaves the window. Qubits that
  /// are never live hold nullopt. The measured qubit's last use is
  /// gates.size(), i.e. the end of the program.
  std::vector<std::optional<std::size_t>> first_use;
  std::vector<std::optional<std::size_t>> last_use;
  std::size_t peak_window = 0;
};

RetirementSchedule liveness(const Circuit& circuit);

/// Density matrix over the currently live qubits. Local bit j of a row or
/// column index belongs to global qubit active[j].
class WindowState {
 public:
  using Amplitude = std::complex<double>;

  std::span<const std::size_t> active() const { return active_; }
  std::size_t dim() const { return std::size_t{1} << active_.size(); }
  Amplitude at(std::size_t row, std::size_t col) const { return rho_[row * dim() + col]; }

  Amplitude trace() const;
  /// max |rho - rho^dagger|.
  double hermiticity_error() const;

  /// Adds a qubit in |0><0| as the new highest local bit.
  void adjoin(std::size_t qubit);
  /// Partial trace over the given global qubit.
  void retire(std::size_t qubit);
  /// rho -> U rho U^dagger for a gate whose qubits are all live.
  void apply(const Gate& gate);
  void apply_pauli(std::size_t qubit, Pauli pauli);
  /// Averaged stochastic Pauli noise: with probability p every listed qubit
  /// independently receives a uniformly random X, Y or Z.
  void apply_pauli_channel(std::span<const std::size_t> qubits, double p);

  double expect_z(std::size_t qubit) const;

 private:
  std::size_t local(std::size_t qubit) const;

  std::vector<std::size_t> active_;
  std::vector<Amplitude> rho_{Amplitude{1.0, 0.0}};
};

/// Called after every gate (step = gate index) and once more at the end
/// (step = gates.size()), after any retirements of that step.
using WindowObserver = std::function<void(const WindowState&, std::size_t step)>;

/// Exact <Z> of the measured qubit. Throws CapacityError naming the first
/// gate at which the live set would exceed `window_cap`.
double run_window(const Circuit& circuit, std::size_t window_cap = kDefaultWindowCap,
                  std::span<const PauliInsertion> insertions = {},
                  const WindowObserver& observer = nullptr);

/// <Z> of the measured qubit under the NoiseModel's averaged Pauli channel.
/// Each shot of a trajectory simulation is an independent draw whose
/// outcome probability is exactly this mixed-state marginal.
double run_window_noisy(const Circuit& circuit, const NoiseModel& noise,
                        std::size_t window_cap = kDefaultWindowCap);

enum class StreamNoise {
  /// One window sweep per noisy shot, sharing the dense simulator's
  /// trajectory stream.
  kTrajectories,
  /// N draws from the exact channel expectation. Same outcome
  /// distribution, one sweep in total.
  kChannel,
};

/// Shot sampling. Noiseless runs match the dense simulator's sample_output
/// bit for bit for a given seed, and so do trajectory runs.
ShotOutcome sample_output_stream(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                                 const std::optional<NoiseModel>& noise = std::nullopt,
                                 std::size_t window_cap = kDefaultWindowCap,
                                 StreamNoise method = StreamNoise::kTrajectories);

}  // namespace qpoly
