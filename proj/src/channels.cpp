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

#include "witnesskit/channels.hpp"

#include <cmath>
#include <numbers>

#include "witnesskit/error.hpp"

namespace witnesskit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

std::string channel_name(const ChannelModel& model) {
  return std::visit(overloaded{[](const IdentityChannel&) { return std::string("identity"); },
                               [](const UnitaryRotation&) { return std::string("unitary_rotation"); },
                               [](const Depolarizing&) { return std::string("depolarizing"); },
                               [](const InterceptResend&) { return std::string("intercept_resend"); }},
                    model);
}

namespace intercept {

EveBasis basis(const std::string& name, double probability) {
  EveBasis b;
  b.name = name;
  b.probability = probability;
  if (name == "z") {
    b.measure = {{1.0, 0.0}, {0.0, 1.0}};
  } else if (name == "x") {
    b.measure = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
  } else if (name == "y") {
    b.measure = {{kInvSqrt2, Complex{0.0, kInvSqrt2}}, {kInvSqrt2, Complex{0.0, -kInvSqrt2}}};
  } else if (name == "breidbart") {
    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    b.measure = {{c, s}, {-s, c}};
  } else {
    throw InvalidArgument("unknown intercept basis '" + name + "'");
  }
  return b;
}

InterceptResend strategy(const std::vector<std::string>& names) {
  if (names.empty()) throw InvalidArgument("intercept strategy needs at least one basis");
  InterceptResend s;
  for (const auto& n : names) s.bases.push_back(basis(n, 1.0 / static_cast<double>(names.size())));
  return s;
}

std::vector<InterceptResend> default_strategies() {
  return {strategy({"z"}), strategy({"x"}), strategy({"z", "x"}), strategy({"z", "x", "y"}), strategy({"breidbart"})};
}

}  // namespace intercept

std::vector<ComplexMatrix> channel_kraus(const ChannelModel& model) {
  return std::visit(
      overloaded{
          [](const IdentityChannel&) { return std::vector<ComplexMatrix>{ComplexMatrix::identity(2)}; },
          [](const UnitaryRotation& u) {
            if (!std::isfinite(u.theta)) throw InvalidArgument("unitary_rotation: theta must be finite");
            ComplexMatrix k = ComplexMatrix::identity(2) * Complex{std::cos(u.theta)};
            k -= pauli::y() * Complex{0.0, std::sin(u.theta)};
            return std::vector<ComplexMatrix>{k};
          },
          [](const Depolarizing& d) {
            if (!(d.p >= 0.0 && d.p <= 1.0)) throw InvalidArgument("depolarizing: p must lie in [0, 1]");
            if (d.p == 0.0) return std::vector<ComplexMatrix>{ComplexMatrix::identity(2)};
            const double w = std::sqrt(d.p / 4.0);
            return std::vector<ComplexMatrix>{ComplexMatrix::identity(2) * Complex{std::sqrt(1.0 - 3.0 * d.p / 4.0)},
                                              pauli::x() * Complex{w}, pauli::y() * Complex{w},
                                              pauli::z() * Complex{w}};
          },
          [](const InterceptResend& ir) {
            if (ir.bases.empty()) throw InvalidArgument("intercept_resend: no bases");
            double total = 0.0;
            std::vector<ComplexMatrix> kraus;
            for (const auto& b : ir.bases) {
              if (!(b.probability >= 0.0)) throw InvalidArgument("intercept_resend: negative basis probability");
              total += b.probability;
              if (b.measure.size() != 2) throw InvalidArgument("intercept_resend: basis '" + b.name + "' needs 2 states");
              if (!b.resend.empty() && b.resend.size() != b.measure.size())
                throw InvalidArgument("intercept_resend: one resend state per outcome required");
              for (std::size_t k = 0; k < b.measure.size(); ++k) {
                const ComplexVector m = normalized(b.measure[k]);
                const ComplexVector r = normalized(b.resend.empty() ? b.measure[k] : b.resend[k]);
                kraus.push_back(ComplexMatrix::outer(r, m) * Complex{std::sqrt(b.probability)});
              }
            }
            if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("intercept_resend: probabilities must sum to 1");
            ComplexMatrix sum(2);
            for (const auto& k : kraus) sum += k.adjoint() * k;
            if (sum.max_abs_diff(ComplexMatrix::identity(2)) > 1e-10)
              throw InvalidArgument("intercept_resend: measurement bases are not orthonormal");
            return kraus;
          }},
      model);
}

JointDistribution simulate(const ProtocolSpec& spec, const PureState& source, const ChannelModel& model) {
  const auto kraus = channel_kraus(model);
  return born_distribution(apply_channel_to_b(source, kraus), spec);
}

PureState default_source(const ProtocolSpec& spec) {
  if (spec.name != ProtocolName::TwoState) return named::phi_plus();
  const double a = *spec.alpha, b = std::sqrt(1.0 - a * a);
  const std::vector<PureState> signals{PureState::single({a, b}), PureState::single({a, -b})};
  const std::vector<double> probs{0.5, 0.5};
  return pm_source_state(signals, probs);
}

}  // namespace witnesskit
