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

#include "qpoly/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpoly/bench.hpp"
#include "qpoly/compiler.hpp"
#include "qpoly/error.hpp"
#include "qpoly/io.hpp"
#include "qpoly/polynomial.hpp"

namespace qpoly {

namespace {

// Bad flags or inputs detected before any computation; maps to exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (!env || !*env) return kDefaultMasterSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (errno != 0 || *end != '\0' || *env == '-') {
    throw UsageError(std::string(kSeedEnvVar) + "='" + env + "' is not an unsigned 64-bit integer");
  }
  return v;
}

std::string fmt(double v) { return std::isfinite(v) ? format_shortest(v) : std::to_string(v); }

std::string fmt_short(double v, int digits = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<double> parse_coeff_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string field =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (field.empty() || used != field.size() || !std::isfinite(v)) {
      throw UsageError("--target: '" + field + "' is not a number in poly:<a0,a1,...>");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::function<double(double)> builtin_target(const std::string& name) {
  if (name.rfind("poly:", 0) == 0) {
    Polynomial p(parse_coeff_list(name.substr(5)));
    return [p](double x) { return p(x); };
  }
  if (name == "sin") return [](double x) { return std::sin(M_PI * x); };
  if (name == "exp") return [](double x) { return std::exp(x); };
  if (name == "tanh") return [](double x) { return std::tanh(2.0 * x); };
  if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  if (name == "abs") return [](double x) { return std::abs(x); };
  throw UsageError("--target: unknown target '" + name +
                   "' (expected poly:<list>, sin, exp, tanh, runge or abs)");
}

void check_x(double x) {
  if (!(std::abs(x) <= 1.0)) throw UsageError("--x must lie in [-1, 1], got " + fmt(x));
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string samples, target, out;
  std::size_t degree = 0;
  std::string method = "least_squares";
  std::size_t points = 201;
  std::size_t epochs = 20000;
  double step_size = 0.5;
};

int cmd_fit(const FitArgs& a, const CLI::App& app, std::ostream& out) {
  const bool have_samples = app.count("--samples") > 0;
  const bool have_target = app.count("--target") > 0;
  if (have_samples == have_target) {
    throw UsageError("fit needs exactly one of --samples or --target");
  }
  FitConfig config;
  if (a.method == "least_squares") {
    config.method = FitMethod::kLeastSquares;
  } else if (a.method == "gradient_descent") {
    config.method = FitMethod::kGradientDescent;
  } else {
    throw UsageError("--method must be least_squares or gradient_descent");
  }
  if (a.points < 1) throw UsageError("--points must be >= 1");
  if (a.epochs < 1) throw UsageError("--epochs must be >= 1");
  if (!(a.step_size > 0.0)) throw UsageError("--step-size must be positive");
  config.sample_count = a.points;
  config.epochs = a.epochs;
  config.step_size = a.step_size;

  std::vector<Sample> samples;
  if (have_samples) {
    try {
      samples = samples_from_csv(read_text_file(a.samples));
    } catch (const Error& e) {
      throw UsageError(std::string("--samples: ") + e.what());
    }
  } else {
    samples = sample_function(builtin_target(a.target), config);
  }
  const FitResult r = fit(samples, a.degree, config);
  const std::string json = coeffs_to_json(r.poly);
  if (a.out.empty()) {
    out << json;
  } else {
    write_text_file(a.out, json);
  }
  out << "mse " << fmt(r.mse) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ compile

struct CompileArgs {
  std::string coeffs, out;
  std::string order = "forward";
  double epsilon = 0.0;
};

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  AggregationOrder order;
  try {
    order = parse_order(a.order);
  } catch (const Error& e) {
    throw UsageError(std::string("--order: ") + e.what());
  }
  if (!(a.epsilon >= 0.0)) throw UsageError("--epsilon must be >= 0");
  Polynomial poly{std::vector<double>{0.0}};
  try {
    poly = coeffs_from_json(read_text_file(a.coeffs));
  } catch (const Error& e) {
    throw UsageError(std::string("--coeffs: ") + e.what());
  }
  if (poly.is_zero()) {
    throw NormalizationError(
        "all coefficients are zero; the polynomial is identically 0 and needs no circuit");
  }
  const CompiledProgram program = compile(poly, order, a.epsilon);
  const std::string json = program_to_json(program);
  if (a.out.empty()) {
    out << json;
  } else {
    write_text_file(a.out, json);
  }
  const Circuit probe = build_circuit(program, 0.0);
  const ResourceCounts rc = resources(probe);
  out << "C " << fmt(program.scale) << "\n";
  out << "order " << to_string(order) << "\n";
  out << "qubits " << rc.qubits << "\n";
  out << "two_qubit_gates " << rc.two_qubit_gates << "\n";
  out << "single_qubit_gates " << rc.single_qubit_gates << "\n";
  out << "depth " << rc.depth << "\n";
  out << "peak_window " << liveness(probe).peak_window << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string program;
  double x = 0.0;
  std::uint64_t shots = 4096;
  std::uint64_t seed = kDefaultMasterSeed;
  std::string sim = "dense";
  double noise_p2 = 0.0;
  std::size_t window = kDefaultWindowCap;
};

CompiledProgram load_program(const std::string& path) {
  try {
    return program_from_json(read_text_file(path));
  } catch (const Error& e) {
    throw UsageError(std::string("--program: ") + e.what());
  }
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  check_x(a.x);
  if (a.shots < 1) throw UsageError("--shots must be >= 1");
  if (!(a.noise_p2 >= 0.0 && a.noise_p2 <= 1.0)) throw UsageError("--noise-p2 must lie in [0, 1]");
  if (a.window < 1 || a.window > kMaxWindowCap) {
    throw UsageError("--window must lie in [1, " + std::to_string(kMaxWindowCap) + "]");
  }
  SimulatorKind sim;
  try {
    sim = parse_simulator(a.sim);
  } catch (const Error& e) {
    throw UsageError(std::string("--sim: ") + e.what());
  }
  const CompiledProgram program = load_program(a.program);
  std::optional<NoiseModel> noise;
  if (a.noise_p2 > 0.0) noise = NoiseModel{0.0, a.noise_p2};
  const Estimate e = native_eval(program, a.x, a.shots, a.seed, sim, noise, a.window);
  nlohmann::ordered_json j;
  j["x"] = a.x;
  j["estimate"] = e.value;
  j["stderr"] = e.std_error;
  j["truth_if_known"] = program.source(a.x);
  out << j.dump() << "\n";
  return kExitOk;
}

// -------------------------------------------------------- export-qasm

struct QasmArgs {
  std::string program, out;
  double x = 0.0;
};

int cmd_export_qasm(const QasmArgs& a, std::ostream& out) {
  check_x(a.x);
  const CompiledProgram program = load_program(a.program);
  const std::string text = to_qasm(build_circuit(program, a.x));
  if (a.out.empty()) {
    out << text;
  } else {
    write_text_file(a.out, text);
  }
  return kExitOk;
}

// -------------------------------------------------------------- bench

struct BenchArgs {
  std::string kind;
  std::string config;
  std::string out_dir = ".";
  bool no_timings = false;
  std::uint64_t seed = kDefaultMasterSeed;
  std::uint64_t shots = 0;
  std::size_t trials = 0;
  std::size_t threads = 0;
  std::string sim;
  std::string order;
  double noise_p2 = 0.0;
};

void print_summary(const RunReport& r, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%6s %6s %11s %11s %9s %7s %7s %6s %6s %6s\n", "degree",
                "points", "rmse", "predicted", "pearson", "pass%", "mean_C", "qubits", "2q",
                "depth");
  out << line;
  for (const DegreeSummary& s : r.per_degree) {
    if (!s.metrics) {
      std::snprintf(line, sizeof line, "%6zu %6zu  all %zu points failed\n", s.degree, s.points,
                    s.failures);
      out << line;
      continue;
    }
    const std::string pear = s.metrics->pearson ? fmt_short(*s.metrics->pearson, 6) : "n/a";
    std::snprintf(line, sizeof line, "%6zu %6zu %11.5g %11.5g %9s %7.1f %7.3g %6zu %6zu %6zu\n",
                  s.degree, s.points, s.metrics->rmse, s.predicted_rmse.value_or(0.0),
                  pear.c_str(), 100.0 * s.metrics->pass_rate, s.mean_scale, s.resources.qubits,
                  s.resources.two_qubit_gates, s.resources.depth);
    out << line;
  }
  for (const PointRecord& rec : r.records) {
    if (!rec.error.empty()) {
      out << "failed: " << rec.error << "\n";
      break;
    }
  }
}

int cmd_bench(const BenchArgs& a, const CLI::App& app, std::ostream& out, std::ostream& err) {
  std::string config_text;
  if (!a.config.empty()) {
    try {
      config_text = read_text_file(a.config);
    } catch (const Error& e) {
      throw UsageError(std::string("--config: ") + e.what());
    }
  }
  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw UsageError("--out-dir: cannot create directory '" + a.out_dir + "'");
  }
  const bool timings = !a.no_timings;

  if (a.kind == "shots") {
    ShotScalingConfig c;
    c.master_seed = a.seed;
    try {
      if (!config_text.empty()) c = shot_config_from_json(config_text, c);
      if (app.count("--seed")) c.master_seed = a.seed;
      if (app.count("--order")) c.order = parse_order(a.order);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    if (app.count("--shots") || app.count("--trials") || app.count("--sim") ||
        app.count("--noise-p2")) {
      throw UsageError("bench shots accepts only --config, --seed, --order, --out-dir, --no-timings");
    }
    const ShotScalingReport r = shot_scaling_experiment(c);
    write_text_file(dir / "shots_report.json", shot_report_to_json(r, timings));
    write_text_file(dir / "shots_records.csv", shot_report_to_csv(r));
    char line[128];
    out << "     shots        rmse\n";
    for (const auto& [n, rmse] : r.rows) {
      std::snprintf(line, sizeof line, "%10.0f %11.5g\n", n, rmse);
      out << line;
    }
    out << "slope " << fmt_short(r.slope, 6) << "\n";
    return kExitOk;
  }

  ExperimentConfig c;
  if (a.kind == "table1") {
    c = table1_config();
  } else if (a.kind == "stress") {
    c = stress_config();
  } else if (a.kind == "noise") {
    c = noise_config();
  } else {
    throw UsageError("bench kind must be table1, stress, shots or noise");
  }
  c.master_seed = a.seed;
  try {
    if (!config_text.empty()) c = config_from_json(config_text, c);
    if (app.count("--seed")) c.master_seed = a.seed;
    if (app.count("--shots")) c.shots = a.shots;
    if (app.count("--trials")) c.trials = a.trials;
    if (app.count("--threads")) c.threads = a.threads;
    if (app.count("--sim")) c.simulator = parse_simulator(a.sim);
    if (app.count("--order")) c.order = parse_order(a.order);
    if (app.count("--noise-p2")) {
      NoiseModel n = c.noise.value_or(NoiseModel{});
      n.p2 = a.noise_p2;
      c.noise = n;
    }
    c.check();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  RunReport r;
  try {
    if (a.kind == "stress") {
      r = stress_experiment(c);
    } else if (a.kind == "noise") {
      r = noise_sweep(c);
    } else {
      r = table1_experiment(c);
    }
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  write_text_file(dir / (a.kind + "_report.json"), report_to_json(r, timings));
  write_text_file(dir / (a.kind + "_records.csv"), records_to_csv(r));
  print_summary(r, out);
  const auto failed = r.failed_degrees();
  if (failed.empty()) return kExitOk;
  err << "error: every point failed at degree";
  for (std::size_t d : failed) err << ' ' << d;
  err << "; see the error field of the records\n";
  return kExitNumeric;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::uint64_t seed_default = kDefaultMasterSeed;
  try {
    seed_default = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string seed_help = "RNG seed (default comes from $" + std::string(kSeedEnvVar) +
                                " when set)";

  CLI::App app{"qpoly: fit, compile and simulate polynomial evaluation circuits"};
  app.name("qpoly");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a polynomial to samples or a built-in target");
  fit_cmd->add_option("--samples", fit_args.samples, "CSV file with header x,y");
  fit_cmd->add_option("--target", fit_args.target,
                      "Built-in target: poly:<a0,a1,...>, sin (sin(pi x)), exp (e^x), "
                      "tanh (tanh(2x)), runge (1/(1+25x^2)), abs (|x|)");
  fit_cmd->add_option("--degree", fit_args.degree, "Polynomial degree")->required();
  fit_cmd->add_option("--method", fit_args.method, "least_squares | gradient_descent");
  fit_cmd->add_option("--points", fit_args.points, "Uniform sample count on [-1, 1] for --target");
  fit_cmd->add_option("--epochs", fit_args.epochs, "Gradient-descent steps");
  fit_cmd->add_option("--step-size", fit_args.step_size, "Gradient-descent step size");
  fit_cmd->add_option("--out", fit_args.out, "Coefficient JSON output (stdout when omitted)");

  CompileArgs compile_args;
  CLI::App* compile_cmd =
      app.add_subcommand("compile", "Compile coefficients into a weight schedule");
  compile_cmd->add_option("--coeffs", compile_args.coeffs, "Coefficient JSON file")->required();
  compile_cmd->add_option("--order", compile_args.order, "Aggregation order: forward | backward");
  compile_cmd->add_option("--epsilon", compile_args.epsilon,
                          "Relative slack added to the rescale constant");
  compile_cmd->add_option("--out", compile_args.out, "Program JSON output (stdout when omitted)");

  EvaluateArgs eval_args;
  eval_args.seed = seed_default;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Estimate P(x) from a compiled program");
  eval_cmd->add_option("--program", eval_args.program, "Program JSON file")->required();
  eval_cmd->add_option("--x", eval_args.x, "Input in [-1, 1]")->required();
  eval_cmd->add_option("--shots", eval_args.shots, "Number of measurement shots");
  eval_cmd->add_option("--seed", eval_args.seed, seed_help);
  eval_cmd->add_option("--sim", eval_args.sim, "Simulator: dense | stream");
  eval_cmd->add_option("--noise-p2", eval_args.noise_p2,
                       "Pauli error probability after each two-qubit gate");
  eval_cmd->add_option("--window", eval_args.window, "Live-qubit cap of the stream simulator");

  BenchArgs bench_args;
  bench_args.seed = seed_default;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run an experiment and write its report");
  bench_cmd->add_option("kind", bench_args.kind, "table1 | stress | shots | noise")->required();
  bench_cmd->add_option("--config", bench_args.config,
                        "Optional JSON config; explicit flags take precedence");
  bench_cmd->add_option("--out-dir", bench_args.out_dir, "Directory for <kind>_report.json and "
                                                         "<kind>_records.csv");
  bench_cmd->add_flag("--no-timings", bench_args.no_timings,
                      "Omit wall-clock timings so reports are byte-reproducible");
  bench_cmd->add_option("--seed", bench_args.seed, "Master seed (default comes from $" +
                                                       std::string(kSeedEnvVar) + " when set)");
  bench_cmd->add_option("--shots", bench_args.shots, "Override the shot count (0 = preset)");
  bench_cmd->add_option("--trials", bench_args.trials, "Override the trial count (0 = preset)");
  bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)");
  bench_cmd->add_option("--sim", bench_args.sim, "Override the simulator: dense | stream");
  bench_cmd->add_option("--order", bench_args.order, "Override the order: forward | backward");
  bench_cmd->add_option("--noise-p2", bench_args.noise_p2, "Override the two-qubit error rate");

  QasmArgs qasm_args;
  CLI::App* qasm_cmd = app.add_subcommand("export-qasm", "Write the OpenQASM 3 circuit for one x");
  qasm_cmd->add_option("--program", qasm_args.program, "Program JSON file")->required();
  qasm_cmd->add_option("--x", qasm_args.x, "Input in [-1, 1]")->required();
  qasm_cmd->add_option("--out", qasm_args.out, "QASM output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_args, *fit_cmd, out);
    if (*compile_cmd) return cmd_compile(compile_args, out);
    if (*eval_cmd) return cmd_evaluate(eval_args, out);
    if (*bench_cmd) return cmd_bench(bench_args, *bench_cmd, out, err);
    if (*qasm_cmd) return cmd_export_qasm(qasm_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace qpoly
