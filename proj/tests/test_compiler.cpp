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
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qpoly/compiler.hpp"
#include "qpoly/dense_simulator.hpp"
#include "qpoly/error.hpp"

namespace qpoly {
namespace test_compiler {

constexpr AggregationOrder kBoth[] = {AggregationOrder::kBackward, AggregationOrder::kForward};

std::vector<double> random_coeffs(std::mt19937_64& gen, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(d + 1);
  for (double& v : a) v = u(gen);
  return a;
}

// Affine least-squares fit of y against x; returns R^2.
double affine_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
}

TEST_CASE("angle_of_weight") {
  CHECK(angle_of_weight(0.0) == 0.0);
  CHECK(angle_of_weight(1.0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(angle_of_weight(0.5) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(angle_of_weight(1.0 + 1e-13) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(angle_of_weight(-1e-13) == 0.0);
  CHECK_THROWS_AS(angle_of_weight(1.1), DomainError);
  CHECK_THROWS_AS(angle_of_weight(-1e-9), DomainError);
}

TEST_CASE("weights for the [1/6, 1/3, 1/2] example") {
  const NormalizedPolynomial np = normalize(Polynomial({0.1, 0.2, 0.3}));
  SUBCASE("backward") {
    const WeightSchedule s = compute_weights(np, AggregationOrder::kBackward);
    CHECK(s.seed_index() == 2);
    CHECK(s.weights[1] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(s.weights[0] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(s.angles[0] == doctest::Approx(0.84106867056793026).epsilon(1e-14));
    CHECK(s.aggregation_sequence() == std::vector<std::size_t>{1, 0});
  }
  SUBCASE("forward") {
    const WeightSchedule s = compute_weights(np, AggregationOrder::kForward);
    CHECK(s.seed_index() == 0);
    CHECK(s.weights[1] == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(s.weights[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.aggregation_sequence() == std::vector<std::size_t>{1, 2});
  }
}

TEST_CASE("monomial skips its zero term") {
  const WeightSchedule s =
      compute_weights(normalize(Polynomial({0.0, 1.0})), AggregationOrder::kBackward);
  CHECK(s.weights[0] == 0.0);
  CHECK(s.skips == std::vector<bool>{true, false});
  CHECK(s.aggregation_sequence().empty());
}

TEST_CASE("schedule invariants on random programs") {
  std::mt19937_64 gen(21);
  for (std::size_t d = 0; d <= 12; ++d) {
    auto a = random_coeffs(gen, d);
    if (d >= 3) a[1] = 0.0;
    for (AggregationOrder order : kBoth) {
      const WeightSchedule s = compute_weights(normalize(Polynomial(a)), order);
      for (std::size_t k = 0; k <= d; ++k) {
        CHECK(s.angles[k] >= 0.0);
        CHECK(s.angles[k] <= M_PI);
        CHECK(s.signs[k] == (a[k] < 0 ? -1 : 1));
        CHECK(s.skips[k] == (a[k] == 0.0 && k != s.seed_index()));
        if (k != s.seed_index()) {
          CHECK(std::abs(s.angles[k] - std::acos(1 - 2 * s.weights[k])) < 1e-14);
        }
      }
    }
  }
}

TEST_CASE("weights are invariant under rescaling the coefficients") {
  const std::vector<double> a{0.25, -0.6, 0.1, 0.33, -0.05};
  for (AggregationOrder order : kBoth) {
    const WeightSchedule base = compute_weights(normalize(Polynomial(a)), order);
    for (double c : {0.5, 4.0, 64.0}) {
      std::vector<double> scaled = a;
      for (double& v : scaled) v *= c;
      CHECK(compute_weights(normalize(Polynomial(scaled)), order) == base);
    }
    // Scales that are not powers of two perturb the last bit of the
    // normalized coefficients, so agreement is to rounding only.
    for (double c : {0.3, 7.0}) {
      std::vector<double> scaled = a;
      for (double& v : scaled) v *= c;
      const WeightSchedule s = compute_weights(normalize(Polynomial(scaled)), order);
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(std::abs(s.angles[k] - base.angles[k]) < 1e-14);
      }
    }
  }
}

TEST_CASE("classical telescoping identity up to degree 40") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> xs(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t d = 0; d <= 40; ++d) {
    const auto a = random_coeffs(gen, d);
    const NormalizedPolynomial np = normalize(Polynomial(a));
    const Polynomial tilde(np.tilde_coeffs);
    for (AggregationOrder order : kBoth) {
      const WeightSchedule s = compute_weights(np, order);
      for (int i = 0; i < 20; ++i) {
        const double x = xs(gen);
        worst = std::max(worst, std::abs(evaluate_schedule(s, x) - tilde(x)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("compiled programs reconstruct their source coefficients") {
  std::mt19937_64 gen(9);
  for (std::size_t d = 0; d <= 15; ++d) {
    const auto a = random_coeffs(gen, d);
    for (AggregationOrder order : kBoth) {
      const auto rec = reconstruct_coefficients(compile(Polynomial(a), order));
      for (std::size_t k = 0; k <= d; ++k) CHECK(std::abs(rec[k] - a[k]) < 1e-10);
    }
  }
}

TEST_CASE("circuit shape") {
  SUBCASE("degree 3 uses four qubits") {
    for (AggregationOrder order : kBoth) {
      const Circuit c = build_circuit(compile(Polynomial({0.1, -0.2, 0.3, 0.4}), order), 0.2);
      CHECK(c.n_qubits == 4);
      CHECK(validate(c).empty());
    }
  }
  SUBCASE("negative constant is a single X gate") {
    const CompiledProgram p = compile(Polynomial({-0.7}), AggregationOrder::kForward);
    const Circuit c = build_circuit(p, 0.42);
    CHECK(c.n_qubits == 1);
    REQUIRE(c.gates.size() == 1);
    CHECK(c.gates[0].kind == GateKind::kX);
    CHECK(c.measured_qubit == 0);
    CHECK(p.scale * expect_z(run_statevector(c), 0) == -0.7);
  }
  SUBCASE("measured qubit follows the order") {
    const Polynomial p({0.1, 0.2, 0.3, 0.4, 0.5});
    CHECK(build_circuit(compile(p, AggregationOrder::kBackward), 0.1).measured_qubit == 0);
    CHECK(build_circuit(compile(p, AggregationOrder::kForward), 0.1).measured_qubit == 4);
  }
  SUBCASE("encoding outside [-1, 1] is refused") {
    const CompiledProgram p = compile(Polynomial({0.1, 0.2}), AggregationOrder::kForward);
    CHECK_THROWS_AS(build_circuit(p, 1.0001), DomainError);
    CHECK_NOTHROW(build_circuit(p, -1.0));
  }
  SUBCASE("sign flips sit immediately before their aggregation block") {
    const CompiledProgram p =
        compile(Polynomial({0.2, -0.1, 0.3, -0.4, -0.05}), AggregationOrder::kForward);
    const Circuit c = build_circuit(p, 0.3);
    std::size_t flips = 0;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      const Gate& g = c.gates[i];
      if (g.kind != GateKind::kX) continue;
      ++flips;
      REQUIRE(i + 1 < c.gates.size());
      // The next gate is the block's first CX, controlled by the flipped term.
      CHECK(c.gates[i + 1].kind == GateKind::kCx);
      CHECK(c.gates[i + 1].qubits[0] == g.qubits[0]);
    }
    CHECK(flips == 3);
  }
}

TEST_CASE("degree-2 circuit reproduces the telescoped value at x = 0.5") {
  // 1/6 + (1/3)(1/2) + (1/2)(1/4) = 0.458333...
  const CompiledProgram p = compile(Polynomial({0.1, 0.2, 0.3}), AggregationOrder::kForward);
  const Circuit c = build_circuit(p, 0.5);
  CHECK(oracle::expect_z(c) == doctest::Approx(0.4583333333333333).epsilon(1e-13));
  CHECK(expect_z(run_statevector(c), c.measured_qubit) ==
        doctest::Approx(0.4583333333333333).epsilon(1e-13));
}

TEST_CASE("forward circuits are exact against the Kronecker oracle") {
  std::mt19937_64 gen(17);
  double worst = 0.0;
  for (std::size_t d = 0; d <= 6; ++d) {
    for (int trial = 0; trial < 3; ++trial) {
      const Polynomial poly(random_coeffs(gen, d));
      const CompiledProgram p = compile(poly, AggregationOrder::kForward);
      for (double x : {-0.9, -0.35, 0.0, 0.6, 1.0}) {
        const Circuit c = build_circuit(p, x);
        worst = std::max(worst, std::abs(p.scale * oracle::expect_z(c) - poly(x)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

// The two orders should agree, but the backward chain leaves a complex
// coherence between term and running sum whose phase depends on x, and the
// aggregation block only cancels it when the phase is fixed. Every degree-2
// program already disagrees, positive coefficients included.
TEST_CASE("backward and forward circuits agree up to degree 10" * doctest::should_fail()) {
  std::mt19937_64 gen(31);
  for (std::size_t d = 0; d <= 10; ++d) {
    const Polynomial poly(random_coeffs(gen, d));
    const CompiledProgram b = compile(poly, AggregationOrder::kBackward);
    const CompiledProgram f = compile(poly, AggregationOrder::kForward);
    for (double x : {-0.8, -0.2, 0.4, 0.9}) {
      const Circuit cb = build_circuit(b, x);
      const Circuit cf = build_circuit(f, x);
      const double zb = expect_z(run_statevector(cb), cb.measured_qubit);
      const double zf = expect_z(run_statevector(cf), cf.measured_qubit);
      CHECK(std::abs(b.scale * zb - f.scale * zf) < 1e-10);
    }
  }
}

TEST_CASE("backward order is exact without a multiplication chain") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial poly(random_coeffs(gen, trial % 2));
    const CompiledProgram p = compile(poly, AggregationOrder::kBackward);
    for (double x : {-0.7, 0.1, 0.8}) {
      const Circuit c = build_circuit(p, x);
      CHECK(std::abs(p.scale * oracle::expect_z(c) - poly(x)) < 1e-12);
    }
  }
}

TEST_CASE("resource counts grow affinely with degree") {
  std::vector<double> ds, two_q, depths;
  std::mt19937_64 gen(6);
  for (std::size_t d = 1; d <= 20; ++d) {
    std::vector<double> a = random_coeffs(gen, d);
    for (double& v : a) v = std::abs(v) + 0.01;
    const ResourceCounts rc =
        resources(build_circuit(compile(Polynomial(a), AggregationOrder::kForward), 0.3));
    CHECK(rc.qubits == d + 1);
    ds.push_back(static_cast<double>(d));
    two_q.push_back(static_cast<double>(rc.two_qubit_gates));
    depths.push_back(static_cast<double>(rc.depth));
  }
  CHECK(affine_r2(ds, two_q) > 0.999);
  CHECK(affine_r2(ds, depths) > 0.999);
  // Each degree adds one multiplication CX and two aggregation CXs.
  for (std::size_t i = 0; i < ds.size(); ++i) CHECK(two_q[i] == 3 * ds[i] - 1);
}

TEST_CASE("degree 6 and degree 35 resource figures") {
  std::vector<double> a6(7, 0.1), a35(36, 0.02);
  const ResourceCounts r6 =
      resources(build_circuit(compile(Polynomial(a6), AggregationOrder::kForward), 0.0));
  CHECK(r6.qubits == 7);
  CHECK(r6.two_qubit_gates == 17);
  CHECK(r6.depth == 27);
  const ResourceCounts r35 =
      resources(build_circuit(compile(Polynomial(a35), AggregationOrder::kForward), 0.0));
  CHECK(r35.qubits == 36);
}

}  // namespace test_compiler
}  // namespace qpoly
