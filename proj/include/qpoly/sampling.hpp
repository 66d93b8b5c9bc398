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

/// \file sampling.hpp
/// \brief Shot sampling shared by the dense and windowed simulators.
///
/// Both simulators funnel through these two functions, so a given seed
/// produces the same ShotOutcome no matter which backend computed the
/// expectation value.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qpoly/circuit.hpp"

namespace qpoly {

/// Stochastic Pauli noise: after each 1-qubit (2-qubit) gate, with
/// probability p1 (p2), every touched qubit receives a uniformly random X, Y
/// or Z.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;

  bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0; }
  /// Throws InvalidArgument unless both probabilities lie in [0, 1].
  void check() const;
};

struct ShotOutcome {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t shots = 0;  ///< N == n0 + n1

  friend bool operator==(const ShotOutcome&, const ShotOutcome&) = default;
};

enum class Pauli : std::uint8_t { kX = 1, kY = 2, kZ = 3 };

/// A Pauli applied right after gate `after_gate`.
struct PauliInsertion {
  std::size_t after_gate = 0;
  std::size_t qubit = 0;
  Pauli pauli = Pauli::kX;

  friend bool operator==(const PauliInsertion&, const PauliInsertion&) = default;
};

/// Draws n1 ~ Binomial(N, (1 - <Z>) / 2) as N Bernoulli trials on the
/// counter stream keyed by `seed`.
ShotOutcome sample_from_expectation(double expect_z, std::uint64_t shots, std::uint64_t seed);

/// Expectation <Z_out> of one noisy trajectory given its Pauli insertions.
using TrajectoryEvaluator = std::function<double(std::span<const PauliInsertion>)>;

/// Runs `shots` independent trajectories. Trajectory t uses the stream
/// derive_seed({seed, t}): one uniform per gate decides whether noise
/// fires, one draw per touched qubit picks the Pauli, and a final uniform
/// samples the output bit. Trajectories without insertions reuse a single
/// cached noiseless evaluation.
ShotOutcome sample_trajectories(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                                const NoiseModel& noise, const TrajectoryEvaluator& evaluate);

}  // namespace qpoly
