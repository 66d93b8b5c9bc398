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

/// \file io.hpp
/// \brief File formats: coefficient JSON, sample CSV, compiled programs,
/// shot outcomes and experiment reports.
///
/// Writers are byte-stable: doubles go out with 17 significant digits (or
/// the shortest round-trip form inside report JSON) and keys keep a fixed
/// order.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qpoly/bench.hpp"
#include "qpoly/compiler.hpp"
#include "qpoly/polynomial.hpp"
#include "qpoly/sampling.hpp"

namespace qpoly {

/// Throws Error (with the path) when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// "%.17g", with non-finite values rejected.
std::string format_double(double v);

/// Shortest "%.{15,16,17}g" form that reads back to the same double.
std::string format_shortest(double v);

/// {"coeffs": [a_0, ..., a_d]}
std::string coeffs_to_json(const Polynomial& poly);
Polynomial coeffs_from_json(std::string_view text);

/// Header "x,y", one sample per row.
std::vector<Sample> samples_from_csv(std::string_view text);
std::string samples_to_csv(const std::vector<Sample>& samples);

/// {"order", "C", "degree", "weights", "angles", "signs", "skips",
///  "source_coeffs"}
std::string program_to_json(const CompiledProgram& program);
/// Accepts files without "source_coeffs"; the source is then rebuilt from
/// the schedule.
CompiledProgram program_from_json(std::string_view text);

/// {"seed", "n0", "n1", "N"}
std::string outcome_to_json(std::uint64_t seed, const ShotOutcome& outcome);
ShotOutcome outcome_from_json(std::string_view text, std::uint64_t* seed = nullptr);

std::string report_to_json(const RunReport& report, bool include_timings = true);
/// Header "degree,trial,point_index,x,truth,estimate,stderr".
std::string records_to_csv(const RunReport& report);

std::string shot_report_to_json(const ShotScalingReport& report, bool include_timings = true);
std::string shot_report_to_csv(const ShotScalingReport& report);

/// Overlays the keys present in a JSON object onto `base`. Unknown keys
/// throw InvalidArgument so typos do not pass silently.
ExperimentConfig config_from_json(std::string_view text, ExperimentConfig base);
ShotScalingConfig shot_config_from_json(std::string_view text, ShotScalingConfig base);

}  // namespace qpoly
