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

#include "qpoly/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qpoly/error.hpp"

namespace qpoly {

std::string_view to_string(AggregationOrder order) {
  return order == AggregationOrder::kBackward ? "backward" : "forward";
}

AggregationOrder parse_order(std::string_view text) {
  if (text == "backward") return AggregationOrder::kBackward;
  if (text == "forward") return AggregationOrder::kForward;
  throw InvalidArgument("unknown aggregation order '" + std::string(text) +
                        "' (expected backward or forward)");
}

std::vector<std::size_t> WeightSchedule::aggregation_sequence() const {
  std::vector<std::size_t> seq;
  if (order == AggregationOrder::kBackward) {
    for (std::size_t k = degree; k-- > 0;) {
      if (!skips[k]) seq.push_back(k);
    }
  } else {
    for (std::size_t k = 1; k <= degree; ++k) {
      if (!skips[k]) seq.push_back(k);
    }
  }
  return seq;
}

double angle_of_weight(double w) {
  constexpr double kSlack = 1e-12;
  if (!(w >= -kSlack && w <= 1.0 + kSlack)) {
    throw DomainError("weight " + std::to_string(w) + " outside [0, 1]");
  }
  w = std::clamp(w, 0.0, 1.0);
  return std::acos(1.0 - 2.0 * w);
}

WeightSchedule compute_weights(const NormalizedPolynomial& np, AggregationOrder order) {
  const std::size_t d = np.degree();
  WeightSchedule s;
  s.order = order;
  s.degree = d;
  s.weights.assign(d + 1, 0.0);
  s.angles.assign(d + 1, 0.0);
  s.signs.assign(d + 1, 1);
  s.skips.assign(d + 1, false);
  for (std::size_t k = 0; k <= d; ++k) {
    s.signs[k] = np.tilde_coeffs[k] < 0.0 ? -1 : 1;
  }

  const std::size_t seed = s.seed_index();
  s.weights[seed] = 1.0;
  s.angles[seed] = std::numbers::pi;

  // Running l1 mass of everything folded in so far, seed included.
  double mass = std::abs(np.tilde_coeffs[seed]);
  auto fold = [&](std::size_t k) {
    const double mag = std::abs(np.tilde_coeffs[k]);
    if (mag == 0.0) {
      s.skips[k] = true;
      return;
    }
    mass += mag;
    s.weights[k] = mag / mass;
    s.angles[k] = angle_of_weight(s.weights[k]);
  };
  if (order == AggregationOrder::kBackward) {
    for (std::size_t k = d; k-- > 0;) fold(k);
  } else {
    for (std::size_t k = 1; k <= d; ++k) fold(k);
  }
  return s;
}

double evaluate_schedule(const WeightSchedule& schedule, double x) {
  std::vector<double> powers(schedule.degree + 1, 1.0);
  for (std::size_t k = 1; k <= schedule.degree; ++k) powers[k] = powers[k - 1] * x;
  const std::size_t seed = schedule.seed_index();
  double acc = schedule.signs[seed] * powers[seed];
  for (std::size_t k : schedule.aggregation_sequence()) {
    const double w = schedule.weights[k];
    acc = w * (schedule.signs[k] * powers[k]) + (1.0 - w) * acc;
  }
  return acc;
}

CompiledProgram compile(const Polynomial& poly, AggregationOrder order, double epsilon) {
  const NormalizedPolynomial np = normalize(poly, epsilon);
  CompiledProgram p;
  p.schedule = compute_weights(np, order);
  p.scale = np.scale;
  p.degree = poly.degree();
  p.source = poly;
  return p;
}

std::vector<double> reconstruct_coefficients(const CompiledProgram& program) {
  const WeightSchedule& s = program.schedule;
  std::vector<double> share(s.degree + 1, 0.0);
  share[s.seed_index()] = 1.0;
  for (std::size_t k : s.aggregation_sequence()) {
    const double w = s.weights[k];
    for (double& v : share) v *= (1.0 - w);
    share[k] = w;
  }
  std::vector<double> out(s.degree + 1);
  for (std::size_t k = 0; k <= s.degree; ++k) {
    out[k] = program.scale * s.signs[k] * share[k];
  }
  return out;
}

void append_encode(Circuit& circuit, std::size_t qubit, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("input x = " + std::to_string(x) + " outside the encodable range [-1, 1]");
  }
  circuit.add(Gate::ry(qubit, std::acos(x)));
}

void append_multiply(Circuit& circuit, std::size_t control, std::size_t target) {
  circuit.add(Gate::rz(target, std::numbers::pi / 2));
  circuit.add(Gate::cx(control, target));
}

void append_weighted_sum(Circuit& circuit, std::size_t term, std::size_t sum, double alpha,
                         SumPhase phase) {
  if (phase == SumPhase::kQuarterTurn) circuit.add(Gate::rz(sum, std::numbers::pi / 2));
  circuit.add(Gate::cx(term, sum));
  circuit.add(Gate::ry(term, alpha / 2));
  circuit.add(Gate::cx(sum, term));
  circuit.add(Gate::ry(term, -alpha / 2));
}

namespace {

// Folds term qubit k into the running sum: sign flip, then the weighted sum.
void aggregate(Circuit& c, const WeightSchedule& s, std::size_t k, std::size_t& sum) {
  if (s.skips[k]) return;
  if (s.signs[k] < 0) c.add(Gate::x(k));
  append_weighted_sum(c, k, sum, s.angles[k], SumPhase::kNone);
  sum = k;
}

}  // namespace

Circuit build_circuit(const CompiledProgram& program, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("input x = " + std::to_string(x) + " outside the encodable range [-1, 1]");
  }
  const WeightSchedule& s = program.schedule;
  const std::size_t d = s.degree;
  Circuit c(d + 1);

  if (s.order == AggregationOrder::kBackward) {
    for (std::size_t k = 1; k <= d; ++k) append_encode(c, k, x);
    for (std::size_t k = 2; k <= d; ++k) append_multiply(c, k - 1, k);
    std::size_t sum = d;
    if (s.signs[d] < 0) c.add(Gate::x(d));
    for (std::size_t k = d; k-- > 0;) aggregate(c, s, k, sum);
    c.measured_qubit = sum;
    return c;
  }

  std::size_t sum = 0;
  if (s.signs[0] < 0) c.add(Gate::x(0));
  for (std::size_t k = 1; k <= d; ++k) {
    append_encode(c, k, x);
    if (k >= 2) {
      append_multiply(c, k - 1, k);
      // q_{k-1} has finished feeding the power chain.
      aggregate(c, s, k - 1, sum);
    }
  }
  if (d >= 1) aggregate(c, s, d, sum);
  c.measured_qubit = sum;
  return c;
}

}  // namespace qpoly
