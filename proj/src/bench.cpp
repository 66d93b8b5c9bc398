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

#include "qpoly/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "qpoly/dense_simulator.hpp"
#include "qpoly/error.hpp"
#include "qpoly/rng.hpp"

namespace qpoly {

namespace {

// Keeps polynomial draws on a different stream from the per-point shots.
constexpr std::uint64_t kPolyStream = 0x706f6c79;  // "poly"

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(SimulatorKind kind) {
  return kind == SimulatorKind::kDense ? "dense" : "stream";
}

SimulatorKind parse_simulator(std::string_view text) {
  if (text == "dense") return SimulatorKind::kDense;
  if (text == "stream") return SimulatorKind::kStream;
  throw InvalidArgument("unknown simulator '" + std::string(text) + "' (expected dense|stream)");
}

void ExperimentConfig::check() const {
  if (degrees.empty()) throw InvalidArgument("degrees must not be empty");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (points_per_trial < 1) throw InvalidArgument("points_per_trial must be >= 1");
  if (!(x_domain.lo >= -1.0 && x_domain.hi <= 1.0 && x_domain.lo <= x_domain.hi)) {
    throw InvalidArgument("x_domain must be a sub-interval of [-1, 1]");
  }
  if (shots < 1 && !exact_expectation) throw InvalidArgument("shots must be >= 1");
  if (!(coeff_bound > 0.0) || !std::isfinite(coeff_bound)) {
    throw InvalidArgument("coeff_bound must be positive");
  }
  if (!(sup_rescale_target > 0.0) || !std::isfinite(sup_rescale_target)) {
    throw InvalidArgument("sup_rescale_target must be positive");
  }
  if (!(threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  if (noise) noise->check();
  if (window_cap < 1 || window_cap > kMaxWindowCap) {
    throw InvalidArgument("window_cap must lie in [1, " + std::to_string(kMaxWindowCap) + "]");
  }
}

ExperimentConfig table1_config() {
  ExperimentConfig c;
  c.name = "table1";
  c.degrees = {1, 2, 3, 4, 5, 6};
  return c;
}

ExperimentConfig stress_config() {
  ExperimentConfig c;
  c.name = "stress";
  c.degrees = {1, 5, 10, 15, 25, 30, 35};
  c.points_per_trial = 5;
  c.trials = 1;
  c.shots = 1024;
  c.simulator = SimulatorKind::kStream;
  return c;
}

ExperimentConfig noise_config() {
  ExperimentConfig c;
  c.name = "noise";
  c.degrees.resize(20);
  std::iota(c.degrees.begin(), c.degrees.end(), std::size_t{1});
  c.simulator = SimulatorKind::kStream;
  c.noise = NoiseModel{0.0, 0.005};
  return c;
}

Polynomial gen_random_poly(std::size_t degree, std::uint64_t seed, double coeff_bound,
                           double sup_target) {
  if (!(coeff_bound > 0.0) || !(sup_target > 0.0)) {
    throw InvalidArgument("coefficient bound and rescale target must be positive");
  }
  std::vector<double> a(degree + 1);
  for (;; ++seed) {
    CounterRng rng(seed);
    for (double& v : a) v = coeff_bound * (2.0 * rng.uniform() - 1.0);
    if (std::any_of(a.begin(), a.end(), [](double v) { return v != 0.0; })) break;
  }
  if (degree == 0) return Polynomial({std::copysign(sup_target, a[0])});
  const double factor = sup_target / sup_norm(Polynomial(a));
  for (double& v : a) v *= factor;
  return Polynomial(std::move(a));
}

std::vector<double> grid_points(const Interval& domain, std::size_t count) {
  std::vector<double> xs(count);
  if (count == 1) {
    xs[0] = 0.5 * (domain.lo + domain.hi);
    return xs;
  }
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = domain.lo +
            (domain.hi - domain.lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return xs;
}

std::vector<std::size_t> RunReport::failed_degrees() const {
  std::vector<std::size_t> out;
  for (const DegreeSummary& s : per_degree) {
    if (s.points == 0) out.push_back(s.degree);
  }
  return out;
}

namespace {

double exact_expectation(const Circuit& circuit, SimulatorKind sim,
                         const std::optional<NoiseModel>& noise, std::size_t window_cap) {
  if (sim == SimulatorKind::kStream) {
    return noise ? run_window_noisy(circuit, *noise, window_cap) : run_window(circuit, window_cap);
  }
  return expect_z(run_statevector(circuit), circuit.measured_qubit);
}

// Returns (outcome, exact <Z>). For dense trajectories the second value is
// the noiseless expectation.
std::pair<ShotOutcome, double> simulate(const Circuit& circuit, std::uint64_t shots,
                                        std::uint64_t seed, SimulatorKind sim,
                                        const std::optional<NoiseModel>& noise,
                                        std::size_t window_cap) {
  const bool noisy = noise && !noise->is_noiseless();
  if (sim == SimulatorKind::kDense && noisy) {
    const double clean = exact_expectation(circuit, sim, std::nullopt, window_cap);
    return {sample_output(circuit, shots, seed, noise), clean};
  }
  const double z = exact_expectation(circuit, sim, noisy ? noise : std::nullopt, window_cap);
  return {sample_from_expectation(z, shots, seed), z};
}

}  // namespace

Estimate native_eval(const CompiledProgram& program, double x, std::uint64_t shots,
                     std::uint64_t seed, SimulatorKind simulator,
                     const std::optional<NoiseModel>& noise, std::size_t window_cap) {
  const Circuit circuit = build_circuit(program, x);
  if (shots == 0) {
    if (simulator == SimulatorKind::kDense && noise && !noise->is_noiseless()) {
      throw InvalidArgument("the exact noisy expectation needs the stream simulator");
    }
    const double z = exact_expectation(circuit, simulator,
                                       noise && !noise->is_noiseless() ? noise : std::nullopt,
                                       window_cap);
    return {program.scale * z, 0.0, 0, program.scale};
  }
  return point_estimate(simulate(circuit, shots, seed, simulator, noise, window_cap).first,
                        program.scale);
}

Estimate direct_baseline_eval(const Polynomial& poly, double x, std::uint64_t shots,
                              std::uint64_t seed) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("x must lie in [-1, 1]");
  const double c_direct = sup_norm(poly);
  if (!(c_direct > 0.0)) throw NormalizationError("cannot rescale the zero polynomial");
  double y = poly(x) / c_direct;
  if (std::abs(y) > 1.0 + 1e-12) throw DomainError("P(x) exceeds the sup-norm rescale");
  y = std::clamp(y, -1.0, 1.0);
  Circuit circuit;
  circuit.n_qubits = 1;
  circuit.add(Gate::ry(0, std::acos(y)));
  const double z = expect_z(run_statevector(circuit), 0);
  if (shots == 0) return {c_direct * z, 0.0, 0, c_direct};
  return point_estimate(sample_from_expectation(z, shots, seed), c_direct);
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.check();
  const auto start = Clock::now();
  RunReport report;
  report.config = config;

  const std::vector<double> xs = grid_points(config.x_domain, config.points_per_trial);
  const std::size_t n_deg = config.degrees.size();
  const std::size_t n_tasks = n_deg * config.trials;
  const std::size_t per_task = config.points_per_trial;
  report.records.resize(n_tasks * per_task);
  report.per_degree.resize(n_deg);
  std::vector<double> task_ms(n_tasks, 0.0);

  // Resource counts come from trial 0 of each degree.
  auto run_task = [&](std::size_t task) {
    const auto t0 = Clock::now();
    const std::size_t di = task / config.trials;
    const std::size_t trial = task % config.trials;
    const std::size_t degree = config.degrees[di];
    PointRecord* recs = &report.records[task * per_task];
    for (std::size_t p = 0; p < per_task; ++p) {
      recs[p].degree = degree;
      recs[p].trial = trial;
      recs[p].point_index = p;
      recs[p].x = xs[p];
    }
    auto context = [&](std::size_t p) {
      return "degree " + std::to_string(degree) + ", trial " + std::to_string(trial) +
             ", point " + std::to_string(p) + ": ";
    };
    std::optional<CompiledProgram> program;
    std::optional<Polynomial> poly;
    try {
      poly = gen_random_poly(degree, derive_seed({config.master_seed, degree, trial, kPolyStream}),
                             config.coeff_bound, config.sup_rescale_target);
      program = compile(*poly, config.order);
      if (trial == 0) {
        const Circuit probe = build_circuit(*program, xs[0]);
        report.per_degree[di].resources = resources(probe);
        report.per_degree[di].peak_window = liveness(probe).peak_window;
      }
    } catch (const Error& e) {
      for (std::size_t p = 0; p < per_task; ++p) recs[p].error = context(p) + e.what();
      task_ms[task] = ms_since(t0);
      return;
    }
    for (std::size_t p = 0; p < per_task; ++p) {
      PointRecord& r = recs[p];
      r.truth = (*poly)(r.x);
      r.scale = program->scale;
      try {
        const Circuit circuit = build_circuit(*program, r.x);
        if (config.exact_expectation) {
          const bool noisy = config.noise && !config.noise->is_noiseless();
          if (noisy && config.simulator == SimulatorKind::kDense) {
            throw InvalidArgument("the exact noisy expectation needs the stream simulator");
          }
          r.expectation = exact_expectation(circuit, config.simulator,
                                            noisy ? config.noise : std::nullopt,
                                            config.window_cap);
          r.estimate = program->scale * r.expectation;
          r.std_error = 0.0;
        } else {
          const std::uint64_t seed = derive_seed({config.master_seed, degree, trial, p});
          const auto [outcome, z] = simulate(circuit, config.shots, seed, config.simulator,
                                             config.noise, config.window_cap);
          const Estimate e = point_estimate(outcome, program->scale);
          r.expectation = z;
          r.estimate = e.value;
          r.std_error = e.std_error;
        }
      } catch (const Error& e) {
        r.error = context(p) + e.what();
      }
    }
    task_ms[task] = ms_since(t0);
  };

  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n_tasks, 1));
  if (threads == 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < n_tasks;) {
          try {
            run_task(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Deterministic reduction in (degree, trial, point) order.
  for (std::size_t di = 0; di < n_deg; ++di) {
    DegreeSummary& s = report.per_degree[di];
    s.degree = config.degrees[di];
    std::vector<std::pair<double, double>> pairs, normalized;
    double predicted = 0.0, scale_sum = 0.0;
    double degree_ms = 0.0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      degree_ms += task_ms[di * config.trials + trial];
      for (std::size_t p = 0; p < per_task; ++p) {
        const PointRecord& r = report.records[(di * config.trials + trial) * per_task + p];
        if (!r.error.empty()) {
          ++s.failures;
          continue;
        }
        pairs.emplace_back(r.truth, r.estimate);
        normalized.emplace_back(r.truth / r.scale, r.estimate / r.scale);
        scale_sum += r.scale;
        if (!config.exact_expectation) {
          predicted += r.scale * std::sqrt(std::max(0.0, 1.0 - r.expectation * r.expectation)) /
                       std::sqrt(static_cast<double>(config.shots));
        }
      }
    }
    s.points = pairs.size();
    report.timings_ms["degree_" + std::to_string(s.degree)] = degree_ms;
    if (pairs.empty()) continue;
    const double n = static_cast<double>(pairs.size());
    s.metrics = run_metrics(pairs, config.threshold);
    s.rmse_normalized = run_metrics(normalized, config.threshold).rmse;
    s.predicted_rmse = config.exact_expectation ? 0.0 : predicted / n;
    s.mean_scale = scale_sum / n;
  }
  report.timings_ms["total"] = ms_since(start);
  return report;
}

RunReport table1_experiment(const ExperimentConfig& config) { return run_experiment(config); }

RunReport stress_experiment(const ExperimentConfig& config) {
  if (config.simulator != SimulatorKind::kStream) {
    throw InvalidArgument("the stress experiment runs on the stream simulator");
  }
  if (config.order != AggregationOrder::kForward) {
    throw InvalidArgument("the stress experiment needs forward aggregation order");
  }
  return run_experiment(config);
}

RunReport noise_sweep(const ExperimentConfig& config) {
  if (!config.noise) throw InvalidArgument("the noise sweep needs a noise model");
  return run_experiment(config);
}

ShotScalingReport shot_scaling_experiment(const ShotScalingConfig& config) {
  const auto start = Clock::now();
  if (config.repetitions < 1 || config.points < 1) {
    throw InvalidArgument("repetitions and points must be >= 1");
  }
  ShotScalingReport report;
  report.config = config;
  const Polynomial poly =
      gen_random_poly(config.degree, derive_seed({config.master_seed, config.degree, kPolyStream}),
                      config.coeff_bound, config.sup_rescale_target);
  report.coeffs = poly.coeffs();
  const CompiledProgram program = compile(poly, config.order);
  const std::vector<double> xs = grid_points(config.x_domain, config.points);
  std::vector<double> z(xs.size()), truth(xs.size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const Circuit circuit = build_circuit(program, xs[p]);
    z[p] = expect_z(run_statevector(circuit), circuit.measured_qubit);
    truth[p] = poly(xs[p]);
  }
  for (std::uint64_t n : config.shot_counts) {
    if (n == 0) throw InvalidArgument("shot counts must be >= 1");
    double sq = 0.0;
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
      for (std::size_t p = 0; p < xs.size(); ++p) {
        const std::uint64_t seed = derive_seed({config.master_seed, n, rep, p});
        const double est = point_estimate(sample_from_expectation(z[p], n, seed), program.scale).value;
        sq += (est - truth[p]) * (est - truth[p]);
      }
    }
    const double count = static_cast<double>(config.repetitions * xs.size());
    report.rows.emplace_back(static_cast<double>(n), std::sqrt(sq / count));
  }
  report.slope = shot_scaling_fit(report.rows);
  report.timings_ms["total"] = ms_since(start);
  return report;
}

}  // namespace qpoly
