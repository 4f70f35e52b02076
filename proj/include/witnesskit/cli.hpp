// Copyright 2026 The witnesskit Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witnesskit/tolerances.hpp"

namespace witnesskit::cli {

/// Exit codes are a stable contract.
enum ExitCode : int {
  kProven = 0,
  kNotProvable = 1,
  kConfigError = 2,
  kNumericError = 3,
  kInconclusive = 4,
};

/// Contents of a --config JSON file. Every field is optional; command-line
/// flags take precedence. Unknown keys are rejected.
///
///   {"protocol": "two_state", "alpha": 0.4, "variant": "eb",
///    "channel": {"kind": "unitary_rotation", "theta": 0.5},
///    "source": "default", "rho_a": "protocol",
///    "tolerances": {"detect": 1e-7}, "scan_resolution": [24, 24, 24],
///    "grid_resolution": 24, "seed": 7, "samples": 100000,
///    "output": {"distribution": "d.json", "report": "r.json", "scan": "s.csv"}}
struct RunConfig {
  std::optional<std::string> protocol;
  std::optional<std::string> variant;
  std::map<std::string, std::string> params;  // alpha, theta, p, strategy, source, rho_a
  std::optional<std::string> channel;
  Tolerances tol = kDefaultTolerances;
  std::optional<std::array<int, 3>> scan_resolution;
  std::optional<int> grid_resolution;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::map<std::string, std::string> output;  // distribution, report, scan
};

/// Throws InvalidArgument on malformed JSON or unknown keys.
RunConfig parse_run_config(std::string_view json_text);

/// Entry point behind the witnesskit executable; args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace witnesskit::cli
