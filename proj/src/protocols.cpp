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

#include "witnesskit/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "witnesskit/error.hpp"

namespace witnesskit {

std::string to_string(ProtocolName name) {
  switch (name) {
    case ProtocolName::SixState: return "six_state";
    case ProtocolName::FourStateEb: return "four_state_eb";
    case ProtocolName::FourStatePm: return "four_state_pm";
    case ProtocolName::TwoState: return "two_state";
  }
  return "unknown";
}

ProtocolName protocol_from_string(std::string_view name) {
  if (name == "six_state") return ProtocolName::SixState;
  if (name == "four_state_eb") return ProtocolName::FourStateEb;
  if (name == "four_state_pm") return ProtocolName::FourStatePm;
  if (name == "two_state") return ProtocolName::TwoState;
  throw InvalidArgument("unknown protocol '" + std::string(name) + "'");
}

std::vector<std::string> ProtocolSpec::alice_labels() const {
  std::vector<std::string> out;
  for (const auto& s : alice)
    for (const auto& o : s.outcomes) out.push_back(o.label);
  return out;
}

std::vector<std::string> ProtocolSpec::bob_labels() const {
  std::vector<std::string> out;
  for (const auto& s : bob)
    for (const auto& o : s.outcomes) out.push_back(o.label);
  return out;
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

MeasurementSetting basis_setting(char basis) {
  ComplexVector plus, minus;
  std::string lp, lm;
  switch (basis) {
    case 'z': plus = {1.0, 0.0}; minus = {0.0, 1.0}; lp = "z0"; lm = "z1"; break;
    case 'x': plus = {kInvSqrt2, kInvSqrt2}; minus = {kInvSqrt2, -kInvSqrt2}; lp = "x+"; lm = "x-"; break;
    case 'y':
      plus = {kInvSqrt2, Complex{0.0, kInvSqrt2}};
      minus = {kInvSqrt2, Complex{0.0, -kInvSqrt2}};
      lp = "y+";
      lm = "y-";
      break;
    default: throw InvalidArgument("basis_setting: unknown basis");
  }
  return {std::string(1, basis), 1.0,
          {{lp, ComplexMatrix::projector(plus)}, {lm, ComplexMatrix::projector(minus)}}};
}

void assign_probabilities(std::vector<MeasurementSetting>& settings, const std::vector<double>& probs,
                          const char* party) {
  if (probs.empty()) {
    for (auto& s : settings) s.probability = 1.0 / static_cast<double>(settings.size());
    return;
  }
  if (probs.size() != settings.size())
    throw InvalidArgument(std::string(party) + " setting probabilities: expected " + std::to_string(settings.size()) +
                          " values");
  double total = 0.0;
  for (double p : probs) {
    if (!(p > 0.0)) throw InvalidArgument(std::string(party) + " setting probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw InvalidArgument(std::string(party) + " setting probabilities must sum to 1");
  for (std::size_t i = 0; i < settings.size(); ++i) settings[i].probability = probs[i];
}

void check_povm(const MeasurementSetting& s) {
  ComplexMatrix sum(s.outcomes.front().matrix.dim());
  for (const auto& o : s.outcomes) sum += o.matrix;
  if (sum.max_abs_diff(ComplexMatrix::identity(sum.dim())) > 1e-10)
    throw NumericError("setting '" + s.basis + "' is not a complete POVM");
}

}  // namespace

ProtocolSpec make_protocol(ProtocolName name, const ProtocolParams& params) {
  ProtocolSpec spec;
  spec.name = name;
  switch (name) {
    case ProtocolName::SixState:
      spec.alice = {basis_setting('z'), basis_setting('x'), basis_setting('y')};
      spec.bob = spec.alice;
      break;
    case ProtocolName::FourStateEb:
    case ProtocolName::FourStatePm:
      spec.alice = {basis_setting('z'), basis_setting('x')};
      spec.bob = spec.alice;
      if (name == ProtocolName::FourStatePm) spec.fixed_rho_a = ComplexMatrix::identity(2) * Complex{0.5};
      break;
    case ProtocolName::TwoState: {
      const double a = params.alpha;
      if (!(a > 0.0 && a < kInvSqrt2)) throw InvalidArgument("two_state: alpha must satisfy 0 < alpha < 1/sqrt(2)");
      const double b = std::sqrt(1.0 - a * a);
      spec.alpha = a;
      spec.alice = {basis_setting('z')};
      // phi_i = a|0> + (-1)^i b|1>; F0 = |phi1_perp><phi1_perp|/2, F1 = |phi0_perp><phi0_perp|/2
      const ComplexVector phi1_perp{b, a};
      const ComplexVector phi0_perp{b, -a};
      const ComplexMatrix f0 = ComplexMatrix::projector(phi1_perp) * Complex{0.5};
      const ComplexMatrix f1 = ComplexMatrix::projector(phi0_perp) * Complex{0.5};
      const ComplexMatrix fnull = ComplexMatrix::identity(2) - f0 - f1;
      spec.bob = {MeasurementSetting{"b92", 1.0, {{"c0", f0}, {"c1", f1}, {"null", fnull}}}};
      ComplexMatrix rho_a = ComplexMatrix::identity(2) + pauli::x() * Complex{a * a - b * b};
      spec.fixed_rho_a = rho_a * Complex{0.5};
      break;
    }
  }
  if (name != ProtocolName::TwoState) {
    assign_probabilities(spec.alice, params.alice_setting_probs, "alice");
    assign_probabilities(spec.bob, params.bob_setting_probs, "bob");
  }
  for (const auto& s : spec.alice) check_povm(s);
  for (const auto& s : spec.bob) check_povm(s);

  if (name == ProtocolName::TwoState) {
    spec.sifting = {{"z0", "c0", false}, {"z0", "c1", true}, {"z1", "c0", true}, {"z1", "c1", false}};
  } else {
    for (const auto& sa : spec.alice)
      for (const auto& sb : spec.bob) {
        if (sa.basis != sb.basis) continue;
        const bool anti = sa.basis == "y";
        for (std::size_t i = 0; i < sa.outcomes.size(); ++i)
          for (std::size_t j = 0; j < sb.outcomes.size(); ++j) {
            const bool same = i == j;
            spec.sifting.push_back({sa.outcomes[i].label, sb.outcomes[j].label, anti ? same : !same});
          }
      }
  }
  return spec;
}

JointDistribution::JointDistribution(std::string protocol, std::map<Key, double> table, double normalization_tol)
    : protocol_(std::move(protocol)), table_(std::move(table)) {
  for (const auto& [key, p] : table_) {
    if (!std::isfinite(p)) throw DataError("distribution entry " + key.first + "|" + key.second + " is not finite");
    if (p < -1e-12) throw DataError("distribution entry " + key.first + "|" + key.second + " is negative");
  }
  const double t = total();
  if (std::abs(t - 1.0) > normalization_tol) {
    std::ostringstream os;
    os.precision(12);
    os << "distribution is not normalized: entries sum to " << t;
    throw DataError(os.str());
  }
}

double JointDistribution::at(const std::string& alice, const std::string& bob) const {
  const auto it = table_.find({alice, bob});
  return it == table_.end() ? 0.0 : it->second;
}

double JointDistribution::total() const {
  double t = 0.0;
  for (const auto& [key, p] : table_) t += p;
  return t;
}

JointDistribution born_distribution(const DensityOperator& rho, const ProtocolSpec& spec) {
  if (rho.split() != kTwoQubits) throw DimensionError("born_distribution: protocols act on two qubits");
  std::map<JointDistribution::Key, double> table;
  for (const auto& sa : spec.alice)
    for (const auto& oa : sa.outcomes)
      for (const auto& sb : spec.bob)
        for (const auto& ob : sb.outcomes) {
          const ComplexMatrix op = tensor_product(oa.matrix, ob.matrix);
          double p = 0.0;
          for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) p += (op(r, c) * rho.matrix()(c, r)).real();
          table[{oa.label, ob.label}] = sa.probability * sb.probability * std::max(p, 0.0);
        }
  double t = 0.0;
  for (const auto& [k, p] : table) t += p;
  for (auto& [k, p] : table) p /= t;
  return {to_string(spec.name), std::move(table)};
}

JointDistribution sample_distribution(const JointDistribution& exact, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidArgument("sample_distribution: samples must be positive");
  std::mt19937_64 rng(seed);
  // Sequential conditional binomials give an exact multinomial draw.
  std::map<JointDistribution::Key, double> table;
  std::uint64_t remaining = samples;
  double mass_left = 1.0;
  const auto& src = exact.table();
  std::size_t idx = 0;
  for (const auto& [key, p] : src) {
    ++idx;
    std::uint64_t k = 0;
    if (idx == src.size()) {
      k = remaining;
    } else if (remaining > 0 && mass_left > 0.0) {
      const double q = std::clamp(p / mass_left, 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> bin(remaining, q);
      k = bin(rng);
    }
    table[key] = static_cast<double>(k) / static_cast<double>(samples);
    remaining -= k;
    mass_left -= p;
  }
  return {exact.protocol(), std::move(table)};
}

double qber(const JointDistribution& dist, const ProtocolSpec& spec) {
  double sifted = 0.0, errors = 0.0;
  for (const auto& rule : spec.sifting) {
    const double p = dist.at(rule.alice_label, rule.bob_label);
    sifted += p;
    if (rule.error) errors += p;
  }
  if (!(sifted > 0.0)) throw DataError("qber: no sifted events");
  return errors / sifted;
}

std::optional<std::size_t> PartyFrame::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

PartyFrame party_frame(std::span<const MeasurementSetting> settings) {
  PartyFrame f;
  std::vector<std::pair<double, const ComplexMatrix*>> ops;
  for (const auto& s : settings)
    for (const auto& o : s.outcomes) {
      if (o.matrix.dim() != 2) throw DimensionError("party_frame: measurement operators must act on a qubit");
      f.labels.push_back(o.label);
      ops.emplace_back(s.probability, &o.matrix);
    }
  const std::size_t n = ops.size();
  f.weighted_pauli.assign(4 * n, 0.0);
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix sk = pauli::by_index(k);
    for (std::size_t o = 0; o < n; ++o) {
      const ComplexMatrix& m = *ops[o].second;
      Complex tr = 0.0;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) tr += m(r, c) * sk(c, r);
      f.weighted_pauli[static_cast<std::size_t>(k) * n + o] = ops[o].first * tr.real() / 2.0;
    }
  }
  f.dual = real_pseudo_inverse(f.weighted_pauli, 4, n);
  // M * dual is the projector onto the reachable Pauli span.
  for (int k = 0; k < 4; ++k) {
    double s = 0.0;
    for (std::size_t o = 0; o < n; ++o) s += f.weighted_pauli[static_cast<std::size_t>(k) * n + o] * f.dual_at(o, k);
    f.accessible[static_cast<std::size_t>(k)] = std::abs(s - 1.0) < 1e-9;
  }
  return f;
}

void check_labels(const JointDistribution& dist, const ProtocolSpec& spec) {
  if (dist.protocol() != to_string(spec.name)) {
    // four_state_eb and four_state_pm share one outcome alphabet.
    const bool four = (dist.protocol() == "four_state_eb" || dist.protocol() == "four_state_pm") &&
                      (spec.name == ProtocolName::FourStateEb || spec.name == ProtocolName::FourStatePm);
    if (!four)
      throw DataError("distribution is labeled '" + dist.protocol() + "' but protocol '" + to_string(spec.name) +
                      "' was requested");
  }
  const auto al = spec.alice_labels();
  const auto bl = spec.bob_labels();
  for (const auto& [key, p] : dist.table()) {
    if (std::find(al.begin(), al.end(), key.first) == al.end())
      throw DataError("unknown Alice label '" + key.first + "' for protocol " + to_string(spec.name));
    if (std::find(bl.begin(), bl.end(), key.second) == bl.end())
      throw DataError("unknown Bob label '" + key.second + "' for protocol " + to_string(spec.name));
  }
}

namespace {

// Largest deviation between the marginal of one party conditioned on each of
// the other party's settings.
double marginal_spread(const JointDistribution& dist, const std::vector<MeasurementSetting>& own,
                       const std::vector<MeasurementSetting>& other, bool own_is_alice) {
  std::vector<std::vector<double>> marginals;
  for (const auto& so : other) {
    std::vector<double> m;
    double mass = 0.0;
    for (const auto& s : own)
      for (const auto& o : s.outcomes) {
        double v = 0.0;
        for (const auto& oo : so.outcomes)
          v += own_is_alice ? dist.at(o.label, oo.label) : dist.at(oo.label, o.label);
        m.push_back(v);
        mass += v;
      }
    if (mass > 0.0)
      for (auto& v : m) v /= mass;
    marginals.push_back(std::move(m));
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < marginals.size(); ++i)
    for (std::size_t j = i + 1; j < marginals.size(); ++j)
      for (std::size_t k = 0; k < marginals[i].size(); ++k)
        spread = std::max(spread, std::abs(marginals[i][k] - marginals[j][k]));
  return spread;
}

}  // namespace

AccessibleExpectations expectations(const JointDistribution& dist, const ProtocolSpec& spec,
                                    const ExpectationOptions& options) {
  check_labels(dist, spec);
  const PartyFrame fa = party_frame(spec.alice);
  const PartyFrame fb = party_frame(spec.bob);

  std::vector<double> p(fa.size() * fb.size(), 0.0);
  for (std::size_t a = 0; a < fa.size(); ++a)
    for (std::size_t b = 0; b < fb.size(); ++b) p[a * fb.size() + b] = dist.at(fa.labels[a], fb.labels[b]);

  AccessibleExpectations ex;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const std::size_t idx = AccessibleExpectations::index(i, j);
      ex.available[idx] = fa.accessible[static_cast<std::size_t>(i)] && fb.accessible[static_cast<std::size_t>(j)];
      if (!ex.available[idx]) continue;
      double s = 0.0;
      for (std::size_t a = 0; a < fa.size(); ++a) {
        const double ga = fa.dual_at(a, i);
        if (ga == 0.0) continue;
        for (std::size_t b = 0; b < fb.size(); ++b) s += ga * p[a * fb.size() + b] * fb.dual_at(b, j);
      }
      ex.value[idx] = s;
    }
  ex.value[0] = 1.0;

  std::ostringstream os;
  os.precision(6);
  const double spread_a = marginal_spread(dist, spec.alice, spec.bob, true);
  const double spread_b = marginal_spread(dist, spec.bob, spec.alice, false);
  if (spread_a > options.tol.marginal) {
    os << "Alice marginal differs across Bob settings by " << spread_a;
    ex.warnings.push_back(os.str());
    os.str("");
  }
  if (spread_b > options.tol.marginal) {
    os << "Bob marginal differs across Alice settings by " << spread_b;
    ex.warnings.push_back(os.str());
    os.str("");
  }

  const std::optional<ComplexMatrix>& rho_a = options.fixed_rho_a ? options.fixed_rho_a : spec.fixed_rho_a;
  if (options.inject_fixed_rho_a && rho_a) {
    if (rho_a->dim() != 2) throw DimensionError("fixed reduced state must be a qubit operator");
    for (int k = 1; k < 4; ++k) {
      double known = 0.0;
      const ComplexMatrix sk = pauli::by_index(k);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) known += ((*rho_a)(r, c) * sk(c, r)).real();
      const std::size_t idx = AccessibleExpectations::index(k, 0);
      if (ex.available[idx]) {
        if (std::abs(ex.value[idx] - known) > options.tol.marginal) {
          os << "measured Alice marginal <s" << "0xyz"[k] << "> = " << ex.value[idx]
             << " contradicts the fixed reduced state value " << known;
          ex.warnings.push_back(os.str());
          os.str("");
        }
        continue;
      }
      ex.value[idx] = known;
      ex.available[idx] = true;
      ex.injected[idx] = true;
    }
  }
  return ex;
}

}  // namespace witnesskit
