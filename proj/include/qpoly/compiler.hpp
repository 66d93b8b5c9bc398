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

/// \file compiler.hpp
/// \brief Closed-form compilation of polynomial coefficients into circuits.
///
/// A normalized polynomial sum_k t_k x^k (sum |t_k| = 1) is evaluated as a
/// chain of convex combinations. Qubit q_k carries sign_k * x^k in its Z
/// expectation; a running-sum qubit absorbs the terms one at a time,
///
///     S <- w * (sign_k x^k) + (1 - w) * S,
///
/// which telescopes to the polynomial exactly because the magnitudes |t_k|
/// live only in the weights. Two orders are supported:
///
///   backward: seed with the degree-d term, fold k = d-1 .. 0,
///             w_k = |t_k| / sum_{j>=k} |t_j|, measured qubit q_0;
///   forward:  seed with the constant term, fold k = 1 .. d,
///             v_k = |t_k| / sum_{j<=k} |t_j|, measured qubit q_d.
///
/// The forward builder interleaves power generation and aggregation so that
/// at most four qubits are ever live at once.
#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "qpoly/circuit.hpp"
#include "qpoly/polynomial.hpp"

namespace qpoly {

enum class AggregationOrder { kBackward, kForward };

std::string_view to_string(AggregationOrder order);
/// Accepts "backward" / "forward"; throws InvalidArgument otherwise.
AggregationOrder parse_order(std::string_view text);

struct WeightSchedule {
  AggregationOrder order = AggregationOrder::kForward;
  std::size_t degree = 0;
  /// Indexed by monomial degree k. The seed term has weight 1 (angle pi)
  /// and is never emitted as an aggregation block.
  std::vector<double> weights;
  std::vector<double> angles;
  std::vector<int> signs;
  /// True where the coefficient is exactly zero and the block is elided.
  std::vector<bool> skips;

  std::size_t seed_index() const { return order == AggregationOrder::kBackward ? degree : 0; }

  /// Non-seed, non-skipped term indices in the order they are folded in.
  std::vector<std::size_t> aggregation_sequence() const;

  friend bool operator==(const WeightSchedule&, const WeightSchedule&) = default;
};

/// alpha = arccos(1 - 2w). Values within 1e-12 outside [0, 1] are clamped;
/// anything further out throws DomainError.
double angle_of_weight(double w);

WeightSchedule compute_weights(const NormalizedPolynomial& np, AggregationOrder order);

/// Classical replay of the recursion on t_k = sign_k * x^k. Equals the
/// normalized polynomial at x when the schedule is consistent.
double evaluate_schedule(const WeightSchedule& schedule, double x);

struct CompiledProgram {
  WeightSchedule schedule;
  double scale = 1.0;  ///< C; estimates are C * <Z_out>
  std::size_t degree = 0;
  Polynomial source{std::vector<double>{0.0}};
};

/// normalize + compute_weights. Throws NormalizationError for P == 0.
CompiledProgram compile(const Polynomial& poly, AggregationOrder order, double epsilon = 0.0);

/// C * sign_k * (telescoped weight of term k); recovers the source
/// coefficients up to rounding.
std::vector<double> reconstruct_coefficients(const CompiledProgram& program);

// Circuit building blocks. All of them append to an existing circuit.

/// Ry(arccos x) on q so that <Z_q> = x. Throws DomainError for |x| > 1.
void append_encode(Circuit& circuit, std::size_t qubit, double x);

/// Rz(pi/2) on the target followed by CX(control, target); for independent
/// inputs <Z_target> becomes <Z_control> * <Z_target>.
void append_multiply(Circuit& circuit, std::size_t control, std::size_t target);

enum class SumPhase {
  /// Quarter-turn Rz on the sum qubit before the inner CX. Exact for
  /// independently encoded operands.
  kQuarterTurn,
  /// No phase gate. Exact for operands produced by the multiplication
  /// chain, whose transverse components are already in quadrature.
  kNone,
};

/// Weighted sum on (term, sum): [Rz(pi/2) on sum], CX(term, sum),
/// Ry(alpha/2) on term, CX(sum, term), Ry(-alpha/2) on term. The result
/// w * <Z_term> + (1 - w) * <Z_sum> lands on the term qubit.
void append_weighted_sum(Circuit& circuit, std::size_t term, std::size_t sum, double alpha,
                         SumPhase phase);

/// Full evaluation circuit for input x on degree+1 qubits. Throws
/// DomainError for |x| > 1.
Circuit build_circuit(const CompiledProgram& program, double x);

}  // namespace qpoly
