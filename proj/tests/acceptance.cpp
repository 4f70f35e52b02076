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

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "witnesskit/channels.hpp"
#include "witnesskit/io.hpp"
#include "witnesskit/verify.hpp"

using namespace witnesskit;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s%s%s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.str().empty() ? "" : " | ",
              o.detail.str().c_str());
  std::fflush(stdout);
}

VerifyOptions serial() {
  VerifyOptions o;
  o.threads = 1;
  return o;
}

double tr(const ComplexMatrix& w, const ComplexMatrix& rho) { return wk_test::trace_product(w, rho).real(); }

RealSymmetric2 random_pd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, kPi), le(std::log(0.05), std::log(5.0));
  const double t = ang(rng), e1 = std::exp(le(rng)), e2 = std::exp(le(rng)), c = std::cos(t), s = std::sin(t);
  return {c * c * e1 + s * s * e2, c * s * (e1 - e2), s * s * e1 + c * c * e2};
}

FourStateParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  return {u(rng), u(rng), u(rng)};
}

// mixed ensemble: pure, low rank, full rank, separable and Werner states
DensityOperator ensemble_state(std::mt19937_64& rng, int k) {
  switch (k % 5) {
    case 0: return sampling::random_separable(kTwoQubits, rng);
    case 4: return werner_state(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    default: return sampling::random_density(kTwoQubits, rng, static_cast<std::size_t>(k % 5));
  }
}

double bisect(const std::function<bool(double)>& above, double lo, double hi) {
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int main() {
  criterion(1, "reference table is proven with sifted QBER 0.354", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    const JointDistribution d = io::read_distribution(std::string(WITNESSKIT_DATA_DIR) + "/four_state_reference.tsv", &warnings);
    const VerificationReport r = verify_four_state(d, FourStateVariant::Eb, serial());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.detail << "value " << r.best_value << ", qber " << r.qber << ", " << secs << " s";
    o.require(r.verdict == Verdict::EntanglementProven, "verdict");
    o.require(std::abs(r.qber - 0.354) <= 1e-3, "qber");
    o.require(secs < 10.0, "runtime");
  });

  criterion(2, "unitary channel witness gives -1/4 and QBER sin^2", [](Outcome& o) {
    const ProtocolSpec s = make_protocol(ProtocolName::FourStateEb);
    double worst_v = 0, worst_q = 0;
    for (double th : {kPi / 12, kPi / 6, kPi / 4, kPi / 3, 5 * kPi / 12}) {
      const DensityOperator rho = apply_channel_to_b(named::phi_plus(), channel_kraus(UnitaryRotation{th}));
      const WitnessOperator w = oew_eb4_from_eigenvector(rho.matrix() * Complex{0.5});
      const JointDistribution d = simulate(s, named::phi_plus(), UnitaryRotation{th});
      worst_v = std::max(worst_v, std::abs(pseudo_mixture(w, s).evaluate(d) + 0.25));
      worst_q = std::max(worst_q, std::abs(qber(d, s) - std::sin(th) * std::sin(th)));
    }
    o.detail << "max |value+1/4| " << worst_v << ", max qber error " << worst_q;
    o.require(worst_v < 1e-9, "value");
    o.require(worst_q < 1e-10, "qber");
  });

  criterion(3, "Werner thresholds", [](Outcome& o) {
    const double p4 = bisect([](double p) { return detectability_oracle(werner_state(p), DetectabilityClass::FourState); },
                             0.0, 1.0);
    const double ppt = bisect([](double p) { return !is_ppt(werner_state(p)); }, 0.0, 1.0);
    const ProtocolSpec s = make_protocol(ProtocolName::FourStateEb);
    const Verdict v6 = verify_four_state(born_distribution(werner_state(0.6), s), FourStateVariant::Eb, serial()).verdict;
    const Verdict v45 = verify_four_state(born_distribution(werner_state(0.45), s), FourStateVariant::Eb, serial()).verdict;
    o.detail << "four-state boundary " << p4 << ", PPT boundary " << ppt;
    o.require(std::abs(p4 - 0.5) <= 1e-3, "four-state boundary");
    o.require(std::abs(ppt - 1.0 / 3.0) <= 1e-3, "PPT boundary");
    o.require(v6 == Verdict::EntanglementProven, "p=0.6");
    o.require(v45 == Verdict::NotProvable, "p=0.45");
  });

  criterion(4, "closed-form x_min matches eigenvalue bisection", [](Outcome& o) {
    std::mt19937_64 rng(401);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    int bad = 0;
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
      const RealSymmetric2 a = random_pd(rng), b = random_pd(rng);
      const double th = ang(rng);
      const auto negative = [&](double x) { return min_eigenvalue(two_state_operator(a, b, th, x)) < 0.0; };
      double hi = 1.0;
      while (!negative(hi)) hi *= 2;
      const double err = std::abs(bisect(negative, 0.0, hi) - x_min(a, b));
      worst = std::max(worst, err);
      if (err >= 1e-8) ++bad;
    }
    o.detail << "1000 cases, max error " << worst << ", deviations " << bad;
    o.require(bad == 0, "deviations");
  });

  criterion(5, "six-state verdict agrees with PPT", [](Outcome& o) {
    const ProtocolSpec s = make_protocol(ProtocolName::SixState);
    std::mt19937_64 rng(501);
    int checked = 0, banded = 0, bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const DensityOperator rho = ensemble_state(rng, t);
      const double lam = min_eigenvalue(partial_transpose(rho.matrix(), kTwoQubits, Subsystem::B));
      if (std::abs(lam) <= 1e-6) {
        ++banded;
        continue;
      }
      ++checked;
      const bool proven = verify_six_state(born_distribution(rho, s), serial()).verdict == Verdict::EntanglementProven;
      if (proven != !is_ppt(rho)) ++bad;
    }
    o.detail << checked << " checked, " << banded << " in band, " << bad << " disagreements";
    o.require(bad == 0, "disagreement");
  });

  criterion(6, "family symmetries and the omega identity", [](Outcome& o) {
    std::mt19937_64 rng(601);
    std::vector<DensityOperator> states;
    for (int t = 0; t < 100; ++t) states.push_back(sampling::random_density(kTwoQubits, rng));
    double sym = 0, ident = 0;
    for (int k = 0; k < 500; ++k) {
      const WitnessOperator w = oew_eb4(random_params(rng));
      sym = std::max({sym, w.matrix.max_abs_diff(w.matrix.transpose()),
                      w.matrix.max_abs_diff(partial_transpose(w.matrix, kTwoQubits, Subsystem::B))});
      for (const auto& rho : states)
        ident = std::max(ident, std::abs(tr(w.matrix, rho.matrix()) - tr(w.matrix, omega_four(rho))));
    }
    o.detail << "500 x 100, max asymmetry " << sym << ", max identity error " << ident;
    o.require(sym <= 1e-12, "symmetry");
    o.require(ident < 1e-10, "identity");
  });

  criterion(7, "four-state verdict agrees with omega", [](Outcome& o) {
    const ProtocolSpec s = make_protocol(ProtocolName::FourStateEb);
    std::mt19937_64 rng(701);
    int checked = 0, banded = 0, bad = 0;
    for (int t = 0; t < 300; ++t) {
      const DensityOperator rho = ensemble_state(rng, t);
      const double lam = min_eigenvalue(omega_four(rho));
      if (std::abs(lam) <= 1e-6) {
        ++banded;
        continue;
      }
      ++checked;
      const Verdict v = verify_four_state(born_distribution(rho, s), FourStateVariant::Eb, serial()).verdict;
      if ((v == Verdict::EntanglementProven) != (lam < 0)) ++bad;
    }
    o.detail << checked << " checked, " << banded << " in band, " << bad << " disagreements";
    o.require(bad == 0, "disagreement");
  });

  criterion(8, "intercept-resend bounds", [](Outcome& o) {
    double min4 = 1, min6 = 1;
    for (const auto& st : intercept::default_strategies()) {
      for (ProtocolName name : {ProtocolName::FourStateEb, ProtocolName::FourStatePm, ProtocolName::SixState}) {
        const ProtocolSpec s = make_protocol(name);
        const JointDistribution d = simulate(s, default_source(s), st);
        const double e = qber(d, s);
        VerificationReport r;
        if (name == ProtocolName::SixState) {
          min6 = std::min(min6, e);
          o.require(e >= 1.0 / 3.0 - 1e-10, "six-state qber");
          r = verify_six_state(d, serial());
        } else {
          min4 = std::min(min4, e);
          o.require(e >= 0.25 - 1e-10, "four-state qber");
          r = verify_four_state(d, name == ProtocolName::FourStatePm ? FourStateVariant::Pm : FourStateVariant::Eb,
                                serial());
        }
        o.require(r.verdict == Verdict::NotProvable, "verdict for " + to_string(name));
      }
    }
    o.detail << "min four-state qber " << min4 << ", min six-state qber " << min6;
  });

  criterion(9, "two-state verdicts", [](Outcome& o) {
    for (double alpha : {0.3, 0.4, 0.5}) {
      const ProtocolSpec s = make_protocol(ProtocolName::TwoState, {alpha});
      const JointDistribution d = simulate(s, default_source(s), IdentityChannel{});
      const VerificationReport r = verify_two_state(d, alpha, serial());
      o.detail << "alpha " << alpha << ": " << r.best_value << "; ";
      o.require(r.verdict == Verdict::EntanglementProven, "B92 proven");
      VerifyOptions no = serial();
      no.inject_fixed_rho_a = false;
      o.require(verify_two_state(d, alpha, no).verdict == Verdict::NotProvable, "without injection");
    }
    const ProtocolSpec s = make_protocol(ProtocolName::TwoState, {0.4});
    VerifyOptions mm = serial();
    mm.fixed_rho_a = ComplexMatrix::identity(2) * Complex{0.5};
    const VerificationReport me = verify_two_state(simulate(s, named::phi_plus(), IdentityChannel{}), 0.4, mm);
    o.detail << "maximally entangled: " << me.best_value;
    o.require(me.verdict == Verdict::NotProvable, "maximally entangled");
  });

  criterion(10, "pseudo-mixture identity", [](Outcome& o) {
    std::mt19937_64 rng(1001);
    double worst = 0;
    for (ProtocolName name :
         {ProtocolName::SixState, ProtocolName::FourStateEb, ProtocolName::FourStatePm, ProtocolName::TwoState}) {
      const ProtocolSpec s = make_protocol(name);
      const PureState src = default_source(s);
      for (int t = 0; t < 500; ++t) {
        WitnessOperator w;
        DensityOperator rho = sampling::random_density(kTwoQubits, rng);
        if (name == ProtocolName::SixState) {
          w = custom_witness(wk_test::random_hermitian(4, rng));
        } else if (name == ProtocolName::TwoState) {
          // Bob's side is arbitrary, Alice's reduced state is the protocol's
          rho = apply_channel_to_b(src, sampling::random_kraus(2, 3, rng));
          const RealSymmetric2 a = random_pd(rng), b = random_pd(rng);
          const double th = std::uniform_real_distribution<double>(0, 2 * kPi)(rng);
          w = custom_witness(two_state_operator(a, b, th, std::uniform_real_distribution<double>(0, 1)(rng) * minx(a, b)));
        } else {
          if (s.prepare_and_measure()) rho = apply_channel_to_b(src, sampling::random_kraus(2, 3, rng));
          w = oew_eb4(random_params(rng));
        }
        const double v = pseudo_mixture(w, s).evaluate(born_distribution(rho, s));
        worst = std::max(worst, std::abs(v - tr(w.matrix, rho.matrix())));
      }
    }
    o.detail << "4 protocols x 500 pairs, max error " << worst;
    o.require(worst < 1e-10, "identity");
  });

  return failures == 0 ? 0 : 1;
}
