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

/// \file cli.hpp
/// \brief The `qpoly` command line, callable in-process for testing.
#pragma once

#include <ostream>

namespace qpoly {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that replaces the built-in default seed.
inline constexpr const char* kSeedEnvVar = "QPOLY_SEED";

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Returns 0 on success, 1 on numeric/runtime failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpoly
