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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "test_support.hpp"
#include "witnesskit/channels.hpp"
#include "witnesskit/error.hpp"

using namespace witnesskit;

namespace {

void check_trace_preserving(const ChannelModel& m) {
  ComplexMatrix s(2);
  for (const auto& k : channel_kraus(m)) s += k.adjoint() * k;
  CHECK(s.max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
}

}  // namespace

TEST_CASE("kraus sets are complete") {
  check_trace_preserving(IdentityChannel{});
  check_trace_preserving(UnitaryRotation{0.3});
  check_trace_preserving(Depolarizing{0.7});
  for (const auto& s : intercept::default_strategies()) check_trace_preserving(s);
  CHECK(channel_name(Depolarizing{0.1}) == "depolarizing");
}

TEST_CASE("channel parameter validation") {
  CHECK_THROWS_AS(channel_kraus(Depolarizing{1.2}), InvalidArgument);
  CHECK_THROWS_AS(intercept::basis("w"), InvalidArgument);
  CHECK_THROWS_AS(intercept::strategy({}), InvalidArgument);
  InterceptResend bad = intercept::strategy({"z"});
  bad.bases.front().probability = 0.5;
  CHECK_THROWS_AS(channel_kraus(bad), InvalidArgument);
}

TEST_CASE("unitary rotation qber is sin^2 theta") {
  const ProtocolSpec four = make_protocol(ProtocolName::FourStateEb);
  for (double t : {0.0, 0.1, std::numbers::pi / 6, 1.0, std::numbers::pi / 2}) {
    const JointDistribution d = simulate(four, named::phi_plus(), UnitaryRotation{t});
    CHECK(std::abs(qber(d, four) - std::sin(t) * std::sin(t)) < 1e-12);
  }
}

TEST_CASE("unitary rotation output state") {
  // (1 (x) U)|phi+> = (c|00> + s|01> - s|10> + c|11>)/sqrt2 for U = [[c, -s], [s, c]]
  const double t = 0.4, c = std::cos(t), s = std::sin(t), r = std::sqrt(0.5);
  const DensityOperator out = apply_channel_to_b(named::phi_plus(), channel_kraus(UnitaryRotation{t}));
  const ComplexVector expect{r * c, r * s, -r * s, r * c};
  CHECK(out.matrix().max_abs_diff(ComplexMatrix::projector(expect)) < 1e-14);
}

TEST_CASE("depolarizing the singlet gives a Werner state") {
  for (double p : {0.0, 0.25, 0.6, 1.0}) {
    const DensityOperator out = apply_channel_to_b(named::psi_minus(), channel_kraus(Depolarizing{p}));
    CHECK(out.matrix().max_abs_diff(werner_state(1.0 - p).matrix()) < 1e-14);
  }
}

TEST_CASE("intercept-resend outputs are separable and noisy") {
  const ProtocolSpec four = make_protocol(ProtocolName::FourStateEb);
  const ProtocolSpec six = make_protocol(ProtocolName::SixState);
  for (const auto& s : intercept::default_strategies()) {
    const DensityOperator out = apply_channel_to_b(named::phi_plus(), channel_kraus(s));
    CHECK(is_ppt(out));
    CHECK(qber(simulate(four, named::phi_plus(), s), four) >= 0.25 - 1e-10);
    CHECK(qber(simulate(six, named::phi_plus(), s), six) >= 1.0 / 3.0 - 1e-10);
  }
  // BB84 attack on BB84: exactly 1/4
  CHECK(qber(simulate(four, named::phi_plus(), intercept::strategy({"z", "x"})), four) == doctest::Approx(0.25));
}

TEST_CASE("default sources") {
  const ProtocolSpec two = make_protocol(ProtocolName::TwoState);
  const PureState src = default_source(two);
  const ComplexMatrix ra = DensityOperator::from_pure(src).reduced_a().matrix();
  CHECK(ra.max_abs_diff(*two.fixed_rho_a) < 1e-14);
  CHECK(default_source(make_protocol(ProtocolName::SixState)).amplitudes() == named::phi_plus().amplitudes());
}

TEST_CASE("noiseless two-state data has no errors") {
  const ProtocolSpec two = make_protocol(ProtocolName::TwoState);
  const JointDistribution d = simulate(two, default_source(two), IdentityChannel{});
  CHECK(qber(d, two) < 1e-15);
  CHECK(d.at("z0", "c1") < 1e-15);
}
