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

#include "qpoly/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qpoly/error.hpp"

namespace qpoly {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("cannot serialize a non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_shortest(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("cannot serialize a non-finite value");
  char buf[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string(what) + ": malformed JSON (" + e.what() + ")");
  }
}

template <typename T>
T get_field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) throw InvalidArgument(std::string(what) + ": missing key \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InvalidArgument(std::string(what) + ": key \"" + key + "\" has the wrong type");
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out + "]";
}

std::string double_list(const std::vector<double>& v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(format_double(x));
  return join(parts);
}

// Strips surrounding blanks and a trailing CR.
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  const std::string s(trim(field));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw InvalidArgument("line " + std::to_string(line) + ": '" + s + "' is not a finite number");
  }
  return v;
}

}  // namespace

std::string coeffs_to_json(const Polynomial& poly) {
  return "{\"coeffs\": " + double_list(poly.coeffs()) + "}\n";
}

Polynomial coeffs_from_json(std::string_view text) {
  const Json j = parse_json(text, "coefficient file");
  if (!j.is_object()) throw InvalidArgument("coefficient file: expected a JSON object");
  return Polynomial(get_field<std::vector<double>>(j, "coeffs", "coefficient file"));
}

std::vector<Sample> samples_from_csv(std::string_view text) {
  std::vector<Sample> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact += c;
      }
      if (compact != "x,y") {
        throw InvalidArgument("sample file: expected header 'x,y' on line " +
                              std::to_string(line_no));
      }
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected two fields 'x,y'");
    }
    out.push_back({parse_number(line.substr(0, comma), line_no),
                   parse_number(line.substr(comma + 1), line_no)});
  }
  if (!header_seen) throw InvalidArgument("sample file is empty");
  return out;
}

std::string samples_to_csv(const std::vector<Sample>& samples) {
  std::string out = "x,y\n";
  for (const Sample& s : samples) out += format_double(s.x) + "," + format_double(s.y) + "\n";
  return out;
}

std::string program_to_json(const CompiledProgram& p) {
  const WeightSchedule& s = p.schedule;
  std::vector<std::string> signs, skips;
  for (int v : s.signs) signs.push_back(std::to_string(v));
  for (bool v : s.skips) skips.push_back(v ? "true" : "false");
  std::string out = "{\n";
  out += "  \"order\": \"" + std::string(to_string(s.order)) + "\",\n";
  out += "  \"C\": " + format_double(p.scale) + ",\n";
  out += "  \"degree\": " + std::to_string(p.degree) + ",\n";
  out += "  \"weights\": " + double_list(s.weights) + ",\n";
  out += "  \"angles\": " + double_list(s.angles) + ",\n";
  out += "  \"signs\": " + join(signs) + ",\n";
  out += "  \"skips\": " + join(skips) + ",\n";
  out += "  \"source_coeffs\": " + double_list(p.source.coeffs()) + "\n";
  out += "}\n";
  return out;
}

CompiledProgram program_from_json(std::string_view text) {
  constexpr std::string_view what = "program file";
  const Json j = parse_json(text, what);
  if (!j.is_object()) throw InvalidArgument("program file: expected a JSON object");
  CompiledProgram p;
  p.schedule.order = parse_order(get_field<std::string>(j, "order", what));
  p.scale = get_field<double>(j, "C", what);
  p.degree = get_field<std::size_t>(j, "degree", what);
  p.schedule.degree = p.degree;
  p.schedule.weights = get_field<std::vector<double>>(j, "weights", what);
  p.schedule.angles = get_field<std::vector<double>>(j, "angles", what);
  p.schedule.signs = get_field<std::vector<int>>(j, "signs", what);
  p.schedule.skips = get_field<std::vector<bool>>(j, "skips", what);

  const std::size_t n = p.degree + 1;
  if (p.schedule.weights.size() != n || p.schedule.angles.size() != n ||
      p.schedule.signs.size() != n || p.schedule.skips.size() != n) {
    throw InvalidArgument("program file: weights/angles/signs/skips must have degree + 1 entries");
  }
  if (!(p.scale > 0.0) || !std::isfinite(p.scale)) {
    throw InvalidArgument("program file: C must be positive");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double w = p.schedule.weights[k];
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("program file: weights must lie in [0, 1]");
    const double a = p.schedule.angles[k];
    if (!std::isfinite(a) || a < 0.0 || a > M_PI) {
      throw InvalidArgument("program file: angles must lie in [0, pi]");
    }
    if (p.schedule.signs[k] != 1 && p.schedule.signs[k] != -1) {
      throw InvalidArgument("program file: signs must be +1 or -1");
    }
  }
  if (j.contains("source_coeffs")) {
    p.source = Polynomial(get_field<std::vector<double>>(j, "source_coeffs", what));
    if (p.source.degree() != p.degree) {
      throw InvalidArgument("program file: source_coeffs disagree with degree");
    }
  } else {
    p.source = Polynomial(reconstruct_coefficients(p));
  }
  return p;
}

std::string outcome_to_json(std::uint64_t seed, const ShotOutcome& o) {
  return "{\"seed\": " + std::to_string(seed) + ", \"n0\": " + std::to_string(o.n0) +
         ", \"n1\": " + std::to_string(o.n1) + ", \"N\": " + std::to_string(o.shots) + "}\n";
}

ShotOutcome outcome_from_json(std::string_view text, std::uint64_t* seed) {
  constexpr std::string_view what = "outcome file";
  const Json j = parse_json(text, what);
  ShotOutcome o{get_field<std::uint64_t>(j, "n0", what), get_field<std::uint64_t>(j, "n1", what),
                get_field<std::uint64_t>(j, "N", what)};
  if (o.n0 + o.n1 != o.shots) throw InvalidArgument("outcome file: n0 + n1 != N");
  if (seed) *seed = get_field<std::uint64_t>(j, "seed", what);
  return o;
}

namespace {

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["degrees"] = c.degrees;
  j["points_per_trial"] = c.points_per_trial;
  j["x_domain"] = {c.x_domain.lo, c.x_domain.hi};
  j["trials"] = c.trials;
  j["shots"] = c.shots;
  j["master_seed"] = c.master_seed;
  j["coeff_bound"] = c.coeff_bound;
  j["sup_rescale_target"] = c.sup_rescale_target;
  j["simulator"] = std::string(to_string(c.simulator));
  j["noise"] = c.noise ? Json{{"p1", c.noise->p1}, {"p2", c.noise->p2}} : Json(nullptr);
  j["order"] = std::string(to_string(c.order));
  j["exact_expectation"] = c.exact_expectation;
  j["threshold"] = c.threshold;
  j["window_cap"] = c.window_cap;
  return j;
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string report_to_json(const RunReport& report, bool include_timings) {
  Json j;
  j["config"] = config_to_json(report.config);
  Json per_degree = Json::array();
  for (const DegreeSummary& s : report.per_degree) {
    Json d;
    d["degree"] = s.degree;
    d["points"] = s.points;
    d["failures"] = s.failures;
    d["rmse"] = s.metrics ? Json(s.metrics->rmse) : Json(nullptr);
    d["rmse_normalized"] = optional_number(s.rmse_normalized);
    d["predicted_rmse"] = optional_number(s.predicted_rmse);
    d["pearson"] = s.metrics ? optional_number(s.metrics->pearson) : Json(nullptr);
    d["pass_rate"] = s.metrics ? Json(s.metrics->pass_rate) : Json(nullptr);
    d["mean_C"] = s.mean_scale;
    d["qubits"] = s.resources.qubits;
    d["two_qubit_gates"] = s.resources.two_qubit_gates;
    d["single_qubit_gates"] = s.resources.single_qubit_gates;
    d["depth"] = s.resources.depth;
    d["peak_window"] = s.peak_window;
    per_degree.push_back(std::move(d));
  }
  j["per_degree"] = std::move(per_degree);
  Json records = Json::array();
  for (const PointRecord& r : report.records) {
    Json o;
    o["degree"] = r.degree;
    o["trial"] = r.trial;
    o["point_index"] = r.point_index;
    o["x"] = r.x;
    o["truth"] = r.truth;
    o["estimate"] = r.estimate;
    o["stderr"] = r.std_error;
    o["C"] = r.scale;
    if (!r.error.empty()) o["error"] = r.error;
    records.push_back(std::move(o));
  }
  j["records"] = std::move(records);
  if (include_timings) j["timings_ms"] = report.timings_ms;
  return j.dump(2) + "\n";
}

std::string records_to_csv(const RunReport& report) {
  std::string out = "degree,trial,point_index,x,truth,estimate,stderr\n";
  for (const PointRecord& r : report.records) {
    if (!r.error.empty()) continue;
    out += std::to_string(r.degree) + "," + std::to_string(r.trial) + "," +
           std::to_string(r.point_index) + "," + format_double(r.x) + "," +
           format_double(r.truth) + "," + format_double(r.estimate) + "," +
           format_double(r.std_error) + "\n";
  }
  return out;
}

std::string shot_report_to_json(const ShotScalingReport& report, bool include_timings) {
  const ShotScalingConfig& c = report.config;
  Json j;
  j["config"] = {{"name", "shots"},
                 {"degree", c.degree},
                 {"shot_counts", c.shot_counts},
                 {"repetitions", c.repetitions},
                 {"points", c.points},
                 {"x_domain", {c.x_domain.lo, c.x_domain.hi}},
                 {"master_seed", c.master_seed},
                 {"coeff_bound", c.coeff_bound},
                 {"sup_rescale_target", c.sup_rescale_target},
                 {"order", std::string(to_string(c.order))}};
  j["coeffs"] = report.coeffs;
  Json rows = Json::array();
  for (const auto& [n, rmse] : report.rows) rows.push_back({{"shots", n}, {"rmse", rmse}});
  j["rows"] = std::move(rows);
  j["slope"] = report.slope;
  if (include_timings) j["timings_ms"] = report.timings_ms;
  return j.dump(2) + "\n";
}

std::string shot_report_to_csv(const ShotScalingReport& report) {
  std::string out = "shots,rmse\n";
  for (const auto& [n, rmse] : report.rows) {
    out += std::to_string(static_cast<std::uint64_t>(n)) + "," + format_double(rmse) + "\n";
  }
  return out;
}

namespace {

Interval interval_field(const Json& v, std::string_view what) {
  if (!v.is_array() || v.size() != 2) {
    throw InvalidArgument(std::string(what) + ": x_domain must be [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

ExperimentConfig config_from_json(std::string_view text, ExperimentConfig c) {
  constexpr std::string_view what = "config file";
  const Json j = parse_json(text, what);
  if (!j.is_object()) throw InvalidArgument("config file: expected a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "name") c.name = v.get<std::string>();
      else if (key == "degrees") c.degrees = v.get<std::vector<std::size_t>>();
      else if (key == "points_per_trial") c.points_per_trial = v.get<std::size_t>();
      else if (key == "x_domain") c.x_domain = interval_field(v, what);
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "shots") c.shots = v.get<std::uint64_t>();
      else if (key == "master_seed") c.master_seed = v.get<std::uint64_t>();
      else if (key == "coeff_bound") c.coeff_bound = v.get<double>();
      else if (key == "sup_rescale_target") c.sup_rescale_target = v.get<double>();
      else if (key == "simulator") c.simulator = parse_simulator(v.get<std::string>());
      else if (key == "noise") {
        if (v.is_null()) {
          c.noise.reset();
        } else {
          c.noise = NoiseModel{v.value("p1", 0.0), v.value("p2", 0.0)};
        }
      }
      else if (key == "order") c.order = parse_order(v.get<std::string>());
      else if (key == "exact_expectation") c.exact_expectation = v.get<bool>();
      else if (key == "threshold") c.threshold = v.get<double>();
      else if (key == "window_cap") c.window_cap = v.get<std::size_t>();
      else if (key == "threads") c.threads = v.get<std::size_t>();
      else throw InvalidArgument("config file: unknown key \"" + key + "\"");
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("config file: ") + e.what());
  }
  return c;
}

ShotScalingConfig shot_config_from_json(std::string_view text, ShotScalingConfig c) {
  constexpr std::string_view what = "config file";
  const Json j = parse_json(text, what);
  if (!j.is_object()) throw InvalidArgument("config file: expected a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "name") continue;
      else if (key == "degree") c.degree = v.get<std::size_t>();
      else if (key == "shot_counts") c.shot_counts = v.get<std::vector<std::uint64_t>>();
      else if (key == "repetitions") c.repetitions = v.get<std::size_t>();
      else if (key == "points") c.points = v.get<std::size_t>();
      else if (key == "x_domain") c.x_domain = interval_field(v, what);
      else if (key == "master_seed") c.master_seed = v.get<std::uint64_t>();
      else if (key == "coeff_bound") c.coeff_bound = v.get<double>();
      else if (key == "sup_rescale_target") c.sup_rescale_target = v.get<double>();
      else if (key == "order") c.order = parse_order(v.get<std::string>());
      else throw InvalidArgument("config file: unknown key \"" + key + "\"");
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("config file: ") + e.what());
  }
  return c;
}

}  // namespace qpoly
