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

#include "qpoly/sampling.hpp"

#include <algorithm>
#include <optional>

#include "qpoly/error.hpp"
#include "qpoly/rng.hpp"

namespace qpoly {

void NoiseModel::check() const {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw InvalidArgument("noise probabilities must lie in [0, 1]");
  }
}

namespace {

double prob_one(double expect_z) { return std::clamp((1.0 - expect_z) / 2.0, 0.0, 1.0); }

}  // namespace

ShotOutcome sample_from_expectation(double expect_z, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw InvalidArgument("shot count must be >= 1");
  const double q = prob_one(expect_z);
  CounterRng rng(seed);
  std::uint64_t n1 = 0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    if (rng.uniform() < q) ++n1;
  }
  return {shots - n1, n1, shots};
}

ShotOutcome sample_trajectories(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                                const NoiseModel& noise, const TrajectoryEvaluator& evaluate) {
  if (shots == 0) throw InvalidArgument("shot count must be >= 1");
  noise.check();
  std::optional<double> clean;
  std::vector<PauliInsertion> insertions;
  std::uint64_t n1 = 0;
  for (std::uint64_t t = 0; t < shots; ++t) {
    CounterRng rng(derive_seed({seed, t}));
    insertions.clear();
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
      const Gate& g = circuit.gates[i];
      const double p = g.arity() == 2 ? noise.p2 : noise.p1;
      if (p == 0.0) continue;
      if (rng.uniform() >= p) continue;
      for (std::size_t j = 0; j < g.arity(); ++j) {
        const auto pauli = static_cast<Pauli>(1 + rng.below(3));
        insertions.push_back({i, g.qubits[j], pauli});
      }
    }
    double z;
    if (insertions.empty()) {
      if (!clean) clean = evaluate({});
      z = *clean;
    } else {
      z = evaluate(insertions);
    }
    if (rng.uniform() < prob_one(z)) ++n1;
  }
  return {shots - n1, n1, shots};
}

}  // namespace qpoly
