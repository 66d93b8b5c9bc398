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

/// \file bench.hpp
/// \brief Experiment harness: random-polynomial recovery runs, the wide
/// stress sweep, noise sweeps and shot-count scaling.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpoly/compiler.hpp"
#include "qpoly/estimator.hpp"
#include "qpoly/polynomial.hpp"
#include "qpoly/sampling.hpp"
#include "qpoly/stream_simulator.hpp"

namespace qpoly {

inline constexpr std::uint64_t kDefaultMasterSeed = 20250521;

enum class SimulatorKind { kDense, kStream };

std::string_view to_string(SimulatorKind kind);
SimulatorKind parse_simulator(std::string_view text);

struct ExperimentConfig {
  std::string name = "custom";
  std::vector<std::size_t> degrees;
  std::size_t points_per_trial = 15;
  Interval x_domain{-0.9, 0.9};
  std::size_t trials = 10;
  std::uint64_t shots = 4096;
  std::uint64_t master_seed = kDefaultMasterSeed;
  double coeff_bound = 0.5;
  double sup_rescale_target = 0.5;
  SimulatorKind simulator = SimulatorKind::kDense;
  std::optional<NoiseModel> noise;
  AggregationOrder order = AggregationOrder::kForward;
  /// Replace sampling by the exact expectation (the infinite-shot limit).
  bool exact_expectation = false;
  double threshold = kDefaultPassThreshold;
  std::size_t window_cap = kDefaultWindowCap;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws InvalidArgument on an out-of-range field.
  void check() const;
};

ExperimentConfig table1_config();
ExperimentConfig stress_config();
ExperimentConfig noise_config();

/// Uniform(-bound, bound) coefficients rescaled so that max |P| on [-1, 1]
/// equals `sup_target`. An all-zero draw is redrawn with seed + 1.
Polynomial gen_random_poly(std::size_t degree, std::uint64_t seed, double coeff_bound,
                           double sup_target);

/// Evenly spaced points on the interval (the midpoint when count == 1).
std::vector<double> grid_points(const Interval& domain, std::size_t count);

struct PointRecord {
  std::size_t degree = 0;
  std::size_t trial = 0;
  std::size_t point_index = 0;
  double x = 0.0;
  double truth = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double scale = 1.0;          ///< C of the compiled program
  double expectation = 0.0;    ///< exact <Z_out> of the simulated circuit
  std::string error;           ///< non-empty when this point failed
};

struct DegreeSummary {
  std::size_t degree = 0;
  std::size_t points = 0;      ///< successful records
  std::size_t failures = 0;
  std::optional<Metrics> metrics;             ///< on rescaled estimates
  std::optional<double> rmse_normalized;      ///< on estimate / C
  /// mean over points of C * sqrt(1 - <Z>^2) / sqrt(N).
  std::optional<double> predicted_rmse;
  double mean_scale = 0.0;
  ResourceCounts resources;
  std::size_t peak_window = 0;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<DegreeSummary> per_degree;
  std::vector<PointRecord> records;  ///< ordered by (degree, trial, point)
  std::map<std::string, double> timings_ms;

  /// Degrees whose every record failed.
  std::vector<std::size_t> failed_degrees() const;
};

/// Draw, compile, simulate and estimate for every (degree, trial, point).
/// Per-point failures are recorded with their context rather than thrown.
RunReport run_experiment(const ExperimentConfig& config);

RunReport table1_experiment(const ExperimentConfig& config = table1_config());
/// Requires the stream simulator and forward order.
RunReport stress_experiment(const ExperimentConfig& config = stress_config());
/// Requires a noise model.
RunReport noise_sweep(const ExperimentConfig& config = noise_config());

struct ShotScalingConfig {
  std::size_t degree = 4;
  std::vector<std::uint64_t> shot_counts{256, 1024, 4096, 16384, 65536};
  std::size_t repetitions = 50;
  std::size_t points = 15;
  Interval x_domain{-0.9, 0.9};
  std::uint64_t master_seed = kDefaultMasterSeed;
  double coeff_bound = 0.5;
  double sup_rescale_target = 0.5;
  AggregationOrder order = AggregationOrder::kForward;
};

struct ShotScalingReport {
  ShotScalingConfig config;
  std::vector<double> coeffs;
  /// (N, empirical rmse over repetitions x points)
  std::vector<std::pair<double, double>> rows;
  double slope = 0.0;
  std::map<std::string, double> timings_ms;
};

ShotScalingReport shot_scaling_experiment(const ShotScalingConfig& config = {});

/// Classical evaluation followed by single-qubit encoding of P(x) / sup|P|.
/// `shots == 0` returns the exact value without sampling.
Estimate direct_baseline_eval(const Polynomial& poly, double x, std::uint64_t shots,
                              std::uint64_t seed);

/// Native estimate at one point: compile once, simulate, rescale.
/// `shots == 0` returns C * <Z_out> with zero error bar.
Estimate native_eval(const CompiledProgram& program, double x, std::uint64_t shots,
                     std::uint64_t seed, SimulatorKind simulator = SimulatorKind::kDense,
                     const std::optional<NoiseModel>& noise = std::nullopt,
                     std::size_t window_cap = kDefaultWindowCap);

}  // namespace qpoly
