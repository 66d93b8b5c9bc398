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

/// \file estimator.hpp
/// \brief Shot counts to rescaled estimates, and the quality metrics used by
/// the experiments.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "qpoly/sampling.hpp"

namespace qpoly {

inline constexpr double kDefaultPassThreshold = 0.03;

struct Estimate {
  double value = 0.0;   ///< C * (n0 - n1) / N
  double std_error = 0.0;  ///< 2C * sqrt(p(1-p)/N), p = n1/N
  std::uint64_t shots = 0;
  double scale = 1.0;
};

/// Throws InvalidArgument when outcome.shots == 0 or the counts disagree.
Estimate point_estimate(const ShotOutcome& outcome, double scale);

struct Metrics {
  double rmse = 0.0;
  /// Empty when either side has zero variance or there are < 2 pairs.
  std::optional<double> pearson;
  double pass_rate = 0.0;
  double threshold = kDefaultPassThreshold;
};

/// Pairs are (truth, estimate). A point passes when |estimate - truth| is
/// strictly below the threshold. Throws InvalidArgument on empty input.
Metrics run_metrics(std::span<const std::pair<double, double>> pairs,
                    double threshold = kDefaultPassThreshold);

/// Sample Pearson correlation, or nullopt when undefined.
std::optional<double> pearson(std::span<const std::pair<double, double>> pairs);

/// Least-squares slope of log(rmse) against log(N). Pairs are (N, rmse).
/// Needs >= 4 distinct N spanning at least two decades; throws FitError on a
/// non-positive rmse and InvalidArgument otherwise.
double shot_scaling_fit(std::span<const std::pair<double, double>> samples);

}  // namespace qpoly
