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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "witnesskit/linalg.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

enum class ProtocolName { SixState, FourStateEb, FourStatePm, TwoState };

std::string to_string(ProtocolName name);
/// Accepts "six_state", "four_state_eb", "four_state_pm", "two_state".
ProtocolName protocol_from_string(std::string_view name);

struct MeasurementOperator {
  std::string label;
  ComplexMatrix matrix;  // POVM element on one qubit
};

/// One measurement setting of a party: a POVM chosen with `probability`.
struct MeasurementSetting {
  std::string basis;
  double probability = 1.0;
  std::vector<MeasurementOperator> outcomes;
};

/// A (alice, bob) outcome pair that survives sifting; `error` marks a
/// mismatch with the ideal correlation pattern.
struct SiftRule {
  std::string alice_label;
  std::string bob_label;
  bool error = false;
};

struct ProtocolParams {
  double alpha = 0.4;  // two_state signal overlap parameter
  std::vector<double> alice_setting_probs;  // empty = uniform
  std::vector<double> bob_setting_probs;
};

struct ProtocolSpec {
  ProtocolName name = ProtocolName::SixState;
  std::vector<MeasurementSetting> alice;
  std::vector<MeasurementSetting> bob;
  std::optional<ComplexMatrix> fixed_rho_a;  // present for prepare-and-measure variants
  std::optional<double> alpha;
  std::vector<SiftRule> sifting;

  std::vector<std::string> alice_labels() const;
  std::vector<std::string> bob_labels() const;
  bool prepare_and_measure() const { return fixed_rho_a.has_value(); }
};

/// Builds a protocol description. Labels: "z0","z1","x+","x-","y+","y-" for
/// basis outcomes and "c0","c1","null" for the two-state receiver POVM.
/// Error patterns are those of a |Phi+> reference source: z and x outcomes
/// agree, y outcomes are anti-correlated.
ProtocolSpec make_protocol(ProtocolName name, const ProtocolParams& params = {});

class JointDistribution {
 public:
  using Key = std::pair<std::string, std::string>;

  /// Throws DataError if an entry is below -1e-12 or the total deviates from
  /// 1 by more than `normalization_tol`.
  JointDistribution(std::string protocol, std::map<Key, double> table, double normalization_tol = 1e-8);

  const std::string& protocol() const { return protocol_; }
  const std::map<Key, double>& table() const { return table_; }
  /// Missing pairs read as zero.
  double at(const std::string& alice, const std::string& bob) const;
  double total() const;

 private:
  std::string protocol_;
  std::map<Key, double> table_;
};

/// P(a, b) = q_A q_B Tr[(A_a (x) B_b) rho].
JointDistribution born_distribution(const DensityOperator& rho, const ProtocolSpec& spec);

/// Finite-sample mode: multinomial draw of `samples` events from `exact`,
/// returned as relative frequencies. Deterministic for a given seed.
JointDistribution sample_distribution(const JointDistribution& exact, std::uint64_t samples, std::uint64_t seed);

/// Error mass over sifted mass. Throws DataError when nothing is sifted.
double qber(const JointDistribution& dist, const ProtocolSpec& spec);

/// Linear map between one party's outcome probabilities and the Pauli
/// expectations of that party. `weighted_pauli` is 4 x n (row k, column o)
/// with entries q_o Tr(F_o sigma_k)/2; `dual` is its n x 4 pseudo-inverse.
struct PartyFrame {
  std::vector<std::string> labels;
  std::vector<double> weighted_pauli;
  std::vector<double> dual;
  std::array<bool, 4> accessible{};

  std::size_t size() const { return labels.size(); }
  double dual_at(std::size_t outcome, int pauli) const { return dual[outcome * 4 + static_cast<std::size_t>(pauli)]; }
  std::optional<std::size_t> index_of(const std::string& label) const;
};

PartyFrame party_frame(std::span<const MeasurementSetting> settings);

/// <sigma_i (x) sigma_j> indexed 4*i + j with 0 = identity, 1 = x, 2 = y, 3 = z.
struct AccessibleExpectations {
  std::array<double, 16> value{};
  std::array<bool, 16> available{};
  std::array<bool, 16> injected{};  // filled from the fixed reduced state
  std::vector<std::string> warnings;

  static constexpr std::size_t index(int i, int j) { return static_cast<std::size_t>(4 * i + j); }
  bool has(int i, int j) const { return available[index(i, j)]; }
  double at(int i, int j) const { return value[index(i, j)]; }
};

struct ExpectationOptions {
  bool inject_fixed_rho_a = true;
  std::optional<ComplexMatrix> fixed_rho_a;  // overrides spec.fixed_rho_a
  Tolerances tol = kDefaultTolerances;
};

/// Empirical Pauli correlations reachable from the protocol's settings. For
/// prepare-and-measure specs the one-sided Alice terms not covered by her
/// measurements are filled from the fixed reduced state. Inconsistent
/// marginals are reported as warnings, not errors.
AccessibleExpectations expectations(const JointDistribution& dist, const ProtocolSpec& spec,
                                    const ExpectationOptions& options = {});

/// Labels outside the protocol raise DataError.
void check_labels(const JointDistribution& dist, const ProtocolSpec& spec);

}  // namespace witnesskit
