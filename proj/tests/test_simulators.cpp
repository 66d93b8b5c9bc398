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

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qpoly/compiler.hpp"
#include "qpoly/dense_simulator.hpp"
#include "qpoly/error.hpp"
#include "qpoly/io.hpp"
#include "qpoly/stream_simulator.hpp"

namespace qpoly {
namespace test_simulators {

Circuit random_circuit(std::mt19937_64& gen, std::size_t n, std::size_t gates) {
  std::uniform_int_distribution<std::size_t> q(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  Circuit c;
  c.n_qubits = n;
  c.measured_qubit = q(gen);
  for (std::size_t i = 0; i < gates; ++i) {
    const std::size_t a = q(gen);
    switch (kind(gen)) {
      case 0:
        c.add(Gate::ry(a, ang(gen)));
        break;
      case 1:
        c.add(Gate::rz(a, ang(gen)));
        break;
      case 2:
        c.add(Gate::x(a));
        break;
      default:
        if (n > 1) c.add(Gate::cx(a, (a + 1 + q(gen) % (n - 1)) % n));
    }
  }
  return c;
}

double dense_z(const Circuit& c) { return expect_z(run_statevector(c), c.measured_qubit); }

Polynomial random_poly(std::mt19937_64& gen, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(d + 1);
  for (double& v : a) v = u(gen);
  return Polynomial(a);
}

TEST_CASE("state vector basics") {
  SUBCASE("Ry(arccos 0.6) on |0>") {
    Circuit c;
    append_encode(c, 0, 0.6);
    const StateVector s = run_statevector(c);
    CHECK(s.amplitudes()[0].real() == doctest::Approx(std::sqrt(0.8)).epsilon(1e-15));
    CHECK(s.amplitudes()[1].real() == doctest::Approx(std::sqrt(0.2)).epsilon(1e-15));
    CHECK(expect_z(s, 0) == doctest::Approx(0.6).epsilon(1e-15));
  }
  SUBCASE("X flips the qubit") {
    Circuit c;
    c.add(Gate::x(0));
    CHECK(std::abs(run_statevector(c).amplitudes()[1] - std::complex<double>(1, 0)) == 0.0);
  }
  SUBCASE("negative encodings") {
    Circuit c;
    append_encode(c, 0, -0.35);
    CHECK(dense_z(c) == doctest::Approx(-0.35).epsilon(1e-15));
  }
  SUBCASE("empty circuit measures +1") {
    Circuit c;
    c.n_qubits = 3;
    c.measured_qubit = 2;
    CHECK(dense_z(c) == 1.0);
    CHECK(run_window(c) == 1.0);
  }
}

TEST_CASE("multiplication of independent encodings") {
  Circuit c;
  c.n_qubits = 2;
  append_encode(c, 0, 0.5);
  append_encode(c, 1, -0.4);
  append_multiply(c, 0, 1);
  c.measured_qubit = 1;
  CHECK(dense_z(c) == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(oracle::expect_z(c) == doctest::Approx(-0.2).epsilon(1e-14));
}

TEST_CASE("multiplication and weighted sum over a grid of inputs") {
  const std::vector<double> grid{-1.0, -0.75, -0.3, 0.0, 0.2, 0.6, 0.95, 1.0};
  double worst_mult = 0.0, worst_sum = 0.0;
  for (double a : grid) {
    for (double b : grid) {
      Circuit m;
      m.n_qubits = 2;
      m.measured_qubit = 1;
      append_encode(m, 0, a);
      append_encode(m, 1, b);
      append_multiply(m, 0, 1);
      worst_mult = std::max(worst_mult, std::abs(oracle::expect_z(m) - a * b));
      worst_mult = std::max(worst_mult, std::abs(dense_z(m) - a * b));
      for (double w : {0.0, 0.1, 0.5, 0.8, 1.0}) {
        Circuit s;
        s.n_qubits = 2;
        s.measured_qubit = 0;
        append_encode(s, 0, a);
        append_encode(s, 1, b);
        append_weighted_sum(s, 0, 1, angle_of_weight(w), SumPhase::kQuarterTurn);
        const double want = w * a + (1 - w) * b;
        worst_sum = std::max(worst_sum, std::abs(oracle::expect_z(s) - want));
        worst_sum = std::max(worst_sum, std::abs(dense_z(s) - want));
      }
    }
  }
  CHECK(worst_mult < 1e-12);
  CHECK(worst_sum < 1e-12);
}

TEST_CASE("dense simulator agrees with the Kronecker oracle") {
  std::mt19937_64 gen(77);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const Circuit c = random_circuit(gen, 1 + trial % 6, 40);
    worst = std::max(worst, std::abs(dense_z(c) - oracle::expect_z(c)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("gates preserve the norm") {
  std::mt19937_64 gen(3);
  const Circuit c = random_circuit(gen, 7, 200);
  StateVector s(7);
  for (const Gate& g : c.gates) {
    s.apply(g);
    REQUIRE(std::abs(s.norm_squared() - 1.0) < 1e-12);
  }
}

TEST_CASE("dense simulator refuses circuits above its cap") {
  Circuit c;
  c.n_qubits = 30;
  try {
    run_statevector(c);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("stream") != std::string::npos);
  }
  Circuit bad;
  bad.n_qubits = 2;
  bad.add(Gate::cx(0, 0));
  CHECK_THROWS_AS(run_statevector(bad), CircuitError);
}

TEST_CASE("binomial sampling") {
  SUBCASE("deterministic outcomes") {
    CHECK(sample_from_expectation(1.0, 1000, 5) == ShotOutcome{1000, 0, 1000});
    CHECK(sample_from_expectation(-1.0, 1000, 5) == ShotOutcome{0, 1000, 1000});
  }
  SUBCASE("balanced coin stays within four sigma") {
    const ShotOutcome o = sample_from_expectation(0.0, 4096, 99);
    CHECK(o.n0 + o.n1 == 4096);
    CHECK(std::abs(static_cast<double>(o.n1) - 2048.0) <= 4 * 32.0);
  }
  SUBCASE("zero shots") { CHECK_THROWS_AS(sample_from_expectation(0.3, 0, 1), InvalidArgument); }
  SUBCASE("the mean of many repetitions is unbiased") {
    const double z = 0.37;
    const std::uint64_t shots = 500;
    double sum = 0.0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
      const ShotOutcome o = sample_from_expectation(z, shots, 1000 + r);
      sum += static_cast<double>(o.n0) - static_cast<double>(o.n1);
    }
    const double mean = sum / (reps * static_cast<double>(shots));
    const double se = std::sqrt((1 - z * z) / (reps * static_cast<double>(shots)));
    CHECK(std::abs(mean - z) < 5 * se);
  }
}

TEST_CASE("seed-pinned shot outcome matches its fixture") {
  const Polynomial poly({0.1, -0.2, 0.15, 0.3, -0.05, 0.2});
  const Circuit c = build_circuit(compile(poly, AggregationOrder::kForward), 0.3);
  const ShotOutcome o = sample_output(c, 4096, 12345);
  std::uint64_t seed = 0;
  const ShotOutcome want =
      outcome_from_json(read_text_file(QPOLY_FIXTURE_DIR "/degree5_outcome.json"), &seed);
  CHECK(seed == 12345);
  CHECK(o == want);
  SUBCASE("stream gives the same counts") { CHECK(sample_output_stream(c, 4096, 12345) == o); }
}

TEST_CASE("noise model validation") {
  Circuit c;
  append_encode(c, 0, 0.2);
  CHECK_THROWS_AS(sample_output(c, 10, 1, NoiseModel{-0.1, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(sample_output(c, 10, 1, NoiseModel{0.0, 1.5}), InvalidArgument);
  CHECK(sample_output(c, 512, 8, NoiseModel{}) == sample_output(c, 512, 8));
}

TEST_CASE("noisy trajectories average to the Kraus channel") {
  std::mt19937_64 gen(12);
  const Polynomial poly = random_poly(gen, 2);
  const Circuit c = build_circuit(compile(poly, AggregationOrder::kForward), 0.4);
  const NoiseModel noise{0.02, 0.1};
  const double exact = oracle::expect_z_noisy(c, noise.p1, noise.p2);
  CHECK(std::abs(run_window_noisy(c, noise) - exact) < 1e-12);

  const std::uint64_t shots = 40000;
  for (std::uint64_t seed : {1u, 2u}) {
    const ShotOutcome dense = sample_output(c, shots, seed, noise);
    const double z = (static_cast<double>(dense.n0) - static_cast<double>(dense.n1)) / shots;
    CHECK(std::abs(z - exact) < 5 * std::sqrt((1 - exact * exact) / shots));
    CHECK(sample_output_stream(c, shots, seed, noise) == dense);
  }
}

TEST_CASE("Pauli channel on the window matches the oracle on random circuits") {
  std::mt19937_64 gen(41);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = random_circuit(gen, 2 + trial % 4, 25);
    const NoiseModel noise{0.03, 0.07};
    worst = std::max(worst, std::abs(run_window_noisy(c, noise) -
                                     oracle::expect_z_noisy(c, noise.p1, noise.p2)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("liveness") {
  std::mt19937_64 gen(1);
  const Polynomial p10 = random_poly(gen, 10);
  SUBCASE("forward order keeps the window small") {
    const Circuit c = build_circuit(compile(p10, AggregationOrder::kForward), 0.2);
    CHECK(liveness(c).peak_window <= 4);
  }
  SUBCASE("backward order keeps every power alive") {
    // Ten power qubits; the constant term's qubit is untouched until its
    // block, after the top powers have been traced out.
    const Circuit c = build_circuit(compile(p10, AggregationOrder::kBackward), 0.2);
    CHECK(liveness(c).peak_window == 10);
  }
  SUBCASE("idle measured qubit") {
    Circuit c;
    c.n_qubits = 2;
    c.measured_qubit = 1;
    c.add(Gate::x(0));
    const RetirementSchedule s = liveness(c);
    CHECK(s.first_use[0] == 0u);
    CHECK(s.last_use[0] == 0u);
    CHECK(s.first_use[1] == 1u);
    CHECK(s.last_use[1] == 1u);
  }
}

TEST_CASE("stream agrees with dense") {
  std::mt19937_64 gen(52);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = random_circuit(gen, 1 + trial % 8, 50);
    worst = std::max(worst, std::abs(run_window(c) - dense_z(c)));
  }
  for (std::size_t d = 0; d <= 12; ++d) {
    const CompiledProgram p = compile(random_poly(gen, d), AggregationOrder::kForward);
    for (double x : {-0.85, 0.0, 0.45}) {
      const Circuit c = build_circuit(p, x);
      worst = std::max(worst, std::abs(run_window(c) - dense_z(c)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("the window stays a density matrix") {
  std::mt19937_64 gen(60);
  const Circuit c = build_circuit(compile(random_poly(gen, 9), AggregationOrder::kForward), -0.3);
  double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
  std::size_t calls = 0;
  run_window(c, kDefaultWindowCap, {}, [&](const WindowState& w, std::size_t) {
    ++calls;
    worst_trace = std::max(worst_trace, std::abs(w.trace() - std::complex<double>(1, 0)));
    worst_herm = std::max(worst_herm, w.hermiticity_error());
    const auto n = static_cast<Eigen::Index>(w.dim());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index k = 0; k < n; ++k) m(r, k) = w.at(r, k);
    }
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
    worst_eig = std::max(worst_eig, -ev.minCoeff());
  });
  CHECK(calls == c.gates.size() + 1);
  CHECK(worst_trace < 1e-12);
  CHECK(worst_herm < 1e-12);
  CHECK(worst_eig < 1e-8);
}

TEST_CASE("degree 35 runs in a small window") {
  std::mt19937_64 gen(35);
  const Polynomial poly = random_poly(gen, 35);
  const CompiledProgram p = compile(poly, AggregationOrder::kForward);
  const Circuit c = build_circuit(p, 0.3);
  CHECK(c.n_qubits == 36);
  CHECK(liveness(c).peak_window <= 4);
  CHECK(std::abs(p.scale * run_window(c) - poly(0.3)) < 1e-8);
}

TEST_CASE("window overflow names the gate and suggests the forward order") {
  std::mt19937_64 gen(5);
  const Circuit c =
      build_circuit(compile(random_poly(gen, 12), AggregationOrder::kBackward), 0.1);
  try {
    run_window(c);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("gate index") != std::string::npos);
    CHECK(msg.find("cap of 8") != std::string::npos);
    CHECK(msg.find("forward") != std::string::npos);
  }
  CHECK_THROWS_AS(run_window(c, 0), InvalidArgument);
  CHECK_THROWS_AS(run_window(c, kMaxWindowCap + 1), InvalidArgument);
  CHECK_NOTHROW(run_window(c, kMaxWindowCap));
}

TEST_CASE("stream runtime grows linearly in the gate count") {
  std::mt19937_64 gen(99);
  std::vector<double> gates, per_gate;
  for (std::size_t d : {5u, 15u, 25u, 35u}) {
    const Circuit c = build_circuit(compile(random_poly(gen, d), AggregationOrder::kForward), 0.2);
    double best = 1e300;
    for (int rep = 0; rep < 7; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i < 200; ++i) (void)run_window(c);
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      best = std::min(best, dt.count());
    }
    per_gate.push_back(best / static_cast<double>(c.gates.size()));
  }
  const auto [lo, hi] = std::minmax_element(per_gate.begin(), per_gate.end());
  CHECK(*hi / *lo < 1.5);
}

}  // namespace test_simulators
}  // namespace qpoly
