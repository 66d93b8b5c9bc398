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

#include "qpoly/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "qpoly/error.hpp"

namespace qpoly {

Estimate point_estimate(const ShotOutcome& outcome, double scale) {
  if (outcome.shots == 0) throw InvalidArgument("shot count must be >= 1");
  if (outcome.n0 + outcome.n1 != outcome.shots) {
    throw InvalidArgument("n0 + n1 must equal the shot count");
  }
  const double n = static_cast<double>(outcome.shots);
  const double diff = static_cast<double>(outcome.n0) - static_cast<double>(outcome.n1);
  const double p = static_cast<double>(outcome.n1) / n;
  Estimate e;
  e.value = scale * diff / n;
  e.std_error = std::abs(scale) * 2.0 * std::sqrt(p * (1.0 - p) / n);
  e.shots = outcome.shots;
  e.scale = scale;
  return e;
}

std::optional<double> pearson(std::span<const std::pair<double, double>> pairs) {
  const std::size_t n = pairs.size();
  if (n < 2) return std::nullopt;
  // Exact test: a rounded mean leaves a tiny spurious variance otherwise.
  const auto constant = [&](auto get) {
    return std::all_of(pairs.begin(), pairs.end(),
                       [&](const auto& pr) { return get(pr) == get(pairs.front()); });
  };
  if (constant([](const auto& pr) { return pr.first; }) ||
      constant([](const auto& pr) { return pr.second; })) {
    return std::nullopt;
  }
  double mt = 0.0, me = 0.0;
  for (const auto& [t, e] : pairs) {
    mt += t;
    me += e;
  }
  mt /= static_cast<double>(n);
  me /= static_cast<double>(n);
  double stt = 0.0, see = 0.0, ste = 0.0;
  for (const auto& [t, e] : pairs) {
    stt += (t - mt) * (t - mt);
    see += (e - me) * (e - me);
    ste += (t - mt) * (e - me);
  }
  if (stt <= 0.0 || see <= 0.0) return std::nullopt;
  return std::clamp(ste / std::sqrt(stt * see), -1.0, 1.0);
}

Metrics run_metrics(std::span<const std::pair<double, double>> pairs, double threshold) {
  if (pairs.empty()) throw InvalidArgument("metrics need at least one (truth, estimate) pair");
  Metrics m;
  m.threshold = threshold;
  double sq = 0.0;
  std::size_t passed = 0;
  for (const auto& [t, e] : pairs) {
    const double r = e - t;
    sq += r * r;
    if (std::abs(r) < threshold) ++passed;
  }
  const double n = static_cast<double>(pairs.size());
  m.rmse = std::sqrt(sq / n);
  m.pass_rate = static_cast<double>(passed) / n;
  m.pearson = pearson(pairs);
  return m;
}

double shot_scaling_fit(std::span<const std::pair<double, double>> samples) {
  std::set<double> distinct;
  for (const auto& [n, rmse] : samples) {
    if (!(n > 0.0)) throw InvalidArgument("shot counts must be positive");
    if (!(rmse > 0.0)) throw FitError("rmse values must be positive for a log-log fit");
    distinct.insert(n);
  }
  if (distinct.size() < 4) throw InvalidArgument("need at least 4 distinct shot counts");
  if (*distinct.rbegin() / *distinct.begin() < 100.0) {
    throw InvalidArgument("shot counts must span at least two decades");
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [n, rmse] : samples) {
    mx += std::log(n);
    my += std::log(rmse);
  }
  const double k = static_cast<double>(samples.size());
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [n, rmse] : samples) {
    const double dx = std::log(n) - mx;
    sxy += dx * (std::log(rmse) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace qpoly
