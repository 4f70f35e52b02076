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

#include <string>
#include <variant>
#include <vector>

#include "witnesskit/linalg.hpp"
#include "witnesskit/protocols.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

struct IdentityChannel {};

/// U(theta) = cos(theta) 1 - i sin(theta) sigma_y
struct UnitaryRotation {
  double theta = 0.0;
};

/// rho -> (1 - p) rho + p 1/2. On one half of |psi-> this yields
/// werner_state(1 - p).
struct Depolarizing {
  double p = 0.0;
};

/// One basis Eve may measure in, chosen with `probability`. `resend` holds
/// the state prepared for each outcome; empty means resend the eigenstate
/// that was measured.
struct EveBasis {
  std::string name;
  double probability = 1.0;
  std::vector<ComplexVector> measure;
  std::vector<ComplexVector> resend;
};

struct InterceptResend {
  std::vector<EveBasis> bases;
};

using ChannelModel = std::variant<IdentityChannel, UnitaryRotation, Depolarizing, InterceptResend>;

std::string channel_name(const ChannelModel& model);

namespace intercept {
/// Named measurement bases: "z", "x", "y", "breidbart" (the basis rotated by
/// pi/8 between z and x).
EveBasis basis(const std::string& name, double probability = 1.0);
/// Uniform mixture of the listed bases with eigenstate resend.
InterceptResend strategy(const std::vector<std::string>& names);
/// z only, x only, BB84 {z, x}, six-state {z, x, y} and Breidbart.
std::vector<InterceptResend> default_strategies();
}  // namespace intercept

/// Kraus operators of the channel on a qubit. Throws InvalidArgument for
/// out-of-range parameters or malformed strategies.
std::vector<ComplexMatrix> channel_kraus(const ChannelModel& model);

/// born_distribution of (1 (x) Phi)(|source><source|).
JointDistribution simulate(const ProtocolSpec& spec, const PureState& source, const ChannelModel& model);

/// Default source of each protocol: |Phi+> for six/four-state and the
/// two-state virtual source (|0>|phi_0> + |1>|phi_1>)/sqrt2.
PureState default_source(const ProtocolSpec& spec);

}  // namespace witnesskit
