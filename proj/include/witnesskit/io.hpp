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

// File formats.
//
// Distribution JSON:  {"protocol": "four_state_eb", "table": {"z0|x+": 0.125, ...}}
// Distribution TSV:   optional "# protocol: <name>" line, then a header row of
//                     Bob labels and one row per Alice label. Ket labels
//                     |0> |1> |+> |-> |+i> |-i> map to z0 z1 x+ x- y+ y-.
// Scan CSV:           phi,psi,theta,value,detected (row-major over the axes).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "witnesskit/protocols.hpp"
#include "witnesskit/verify.hpp"

namespace witnesskit::io {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

/// Sums off by at most this much are rescaled to 1 with a warning; rounded
/// published tables need it.
inline constexpr double kRenormalizeTolerance = 1e-3;

/// Maps ket notation to outcome labels; other labels pass through.
std::string canonical_label(std::string_view raw);

JointDistribution parse_distribution_json(std::string_view text, std::vector<std::string>* warnings = nullptr);
JointDistribution parse_distribution_tsv(std::string_view text, std::vector<std::string>* warnings = nullptr,
                                         std::string_view protocol_hint = {});
/// Chooses the parser from the extension (.tsv/.txt) or the first character.
JointDistribution read_distribution(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr,
                                    std::string_view protocol_hint = {});

std::string distribution_json(const JointDistribution& dist);
/// Rows follow spec.alice_labels(), columns spec.bob_labels().
std::string distribution_tsv(const JointDistribution& dist, const ProtocolSpec& spec);

void write_scan_csv(std::ostream& out, const ScanGrid& grid);

std::string report_json(const VerificationReport& report);

/// Shortest decimal form of x rounded to kSignificantDigits.
std::string format_number(double x);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace witnesskit::io
