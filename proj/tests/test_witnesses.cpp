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
#include <random>

#include "test_support.hpp"
#include "witnesskit/channels.hpp"
#include "witnesskit/error.hpp"
#include "witnesskit/witnesses.hpp"

using namespace witnesskit;

namespace {

constexpr double kPi = std::numbers::pi;

double tr(const ComplexMatrix& w, const ComplexMatrix& rho) { return wk_test::trace_product(w, rho).real(); }

RealSymmetric2 random_pd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, kPi), eig(0.1, 3.0);
  const double t = ang(rng), e1 = eig(rng), e2 = eig(rng), c = std::cos(t), s = std::sin(t);
  return {c * c * e1 + s * s * e2, c * s * (e1 - e2), s * s * e1 + c * c * e2};
}

FourStateParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  return {u(rng), u(rng), u(rng)};
}

// Nested zoom grids over the complex Bloch sphere, no golden-section.
double minx_oracle(const RealSymmetric2& a, const RealSymmetric2& b) {
  const ComplexMatrix am = a.matrix(), bm = b.matrix();
  auto f = [&](double t, double p) {
    const ComplexVector psi{std::cos(t / 2), std::polar(std::sin(t / 2), p)};
    const double qa = inner(psi, am.apply(psi)).real(), qb = inner(psi, bm.apply(psi)).real();
    return std::sqrt(std::max(0.0, qa * qb));
  };
  double bt = 0, bp = 0, best = f(0, 0);
  double t0 = 0, t1 = kPi, p0 = 0, p1 = 2 * kPi;
  for (int round = 0; round < 6; ++round) {
    constexpr int n = 60;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const double t = std::clamp(t0 + (t1 - t0) * i / n, 0.0, kPi), p = p0 + (p1 - p0) * j / n;
        const double v = f(t, p);
        if (v < best) best = v, bt = t, bp = p;
      }
    const double wt = (t1 - t0) / 10, wp = (p1 - p0) / 10;
    t0 = bt - wt, t1 = bt + wt, p0 = bp - wp, p1 = bp + wp;
  }
  return best;
}

// x where the smallest eigenvalue of W2 crosses zero, by bisection.
double x_min_bisection(const RealSymmetric2& a, const RealSymmetric2& b, double theta) {
  double lo = 0.0, hi = 1.0;
  while (min_eigenvalue(two_state_operator(a, b, theta, hi)) >= 0.0) hi *= 2;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_eigenvalue(two_state_operator(a, b, theta, mid)) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("optimal witness of phi+") {
  // phi+^{T_B} has its negative eigenvalue on the singlet
  const WitnessOperator w = oew_two_qubit(named::psi_minus());
  CHECK(tr(w.matrix, named::phi_plus().projector()) == doctest::Approx(-0.5));
  CHECK(w.family == WitnessFamily::Oew);
  CHECK_THROWS_AS(oew_two_qubit(PureState({0.6, 0.8, 0.0, 0.0}, kTwoQubits)), InvalidArgument);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) CHECK(tr(w.matrix, sampling::random_separable(kTwoQubits, rng, 1).matrix()) >= -1e-12);
}

TEST_CASE("real entangled state parametrization") {
  const PureState s = real_entangled_state({kPi / 4, kPi / 2, kPi / 2});
  CHECK(std::abs(s.amplitudes()[0] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(s.amplitudes()[3] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(s.amplitudes()[1]) < 1e-15);
  CHECK(std::abs(s.amplitudes()[2]) < 1e-15);
  CHECK(entanglement_condition({0.3, 0.0, 1.0}) == 0.0);
  CHECK(schmidt_decompose(real_entangled_state({0.3, 0.0, 1.0})).coefficients.size() == 1);
  const FourStateParams p{kPi / 3, kPi / 4, kPi / 6};
  const double expect = std::sin(kPi / 3) * std::sin(kPi / 4) *
                        (std::sin(kPi / 3) * std::cos(kPi / 4) * std::cos(kPi / 6) - std::cos(kPi / 3) * std::sin(kPi / 6));
  CHECK(entanglement_condition(p) == doctest::Approx(expect));
  CHECK(std::abs(expect) > 1e-3);
  CHECK(schmidt_decompose(real_entangled_state(p)).coefficients.size() == 2);
}

TEST_CASE("condition vanishes exactly on product states") {
  // a real two-qubit state v is a product iff v0 v3 - v1 v2 = 0
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const FourStateParams p = random_params(rng);
    const PureState st = real_entangled_state(p);
    const auto& v = st.amplitudes();
    const double det = (v[0] * v[3] - v[1] * v[2]).real();
    CHECK(std::abs(det + entanglement_condition(p)) < 1e-12);
  }
}

TEST_CASE("four_state_params inverts the parametrization") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const PureState s = real_entangled_state(random_params(rng));
    const PureState r = real_entangled_state(four_state_params(s.amplitudes()));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r.amplitudes()[k] - s.amplitudes()[k]) < 1e-12);
  }
  CHECK_THROWS_AS(four_state_params(ComplexVector{Complex{0, 1}, 0, 0, 0}), InvalidArgument);
}

TEST_CASE("oew_eb4 symmetry and support") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const WitnessOperator w = oew_eb4(random_params(rng));
    CHECK(w.matrix.max_abs_diff(w.matrix.transpose()) < 1e-12);
    CHECK(w.matrix.max_abs_diff(partial_transpose(w.matrix, kTwoQubits, Subsystem::B)) < 1e-12);
    const auto c = pauli_decompose(w.matrix);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i == 2 || j == 2) CHECK(std::abs(c[4 * i + j]) < 1e-12);
  }
  CHECK(oew_eb4({0.3, 0.0, 1.0}).trivial);
  CHECK_FALSE(oew_eb4({kPi / 4, kPi / 2, kPi / 2}).trivial);
}

TEST_CASE("a sigma_y component breaks one of the symmetries") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    PauliCoefficients c{};
    for (auto& x : c) x = g(rng);
    const ComplexMatrix w = pauli_reconstruct(c);
    const bool sym = w.max_abs_diff(w.transpose()) < 1e-12 &&
                     w.max_abs_diff(partial_transpose(w, kTwoQubits, Subsystem::B)) < 1e-12;
    CHECK_FALSE(sym);
  }
}

TEST_CASE("oew_eb4 is non-negative on separable states") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10000; ++t) {
    const WitnessOperator w = oew_eb4(random_params(rng));
    CHECK(tr(w.matrix, sampling::random_separable(kTwoQubits, rng, 2).matrix()) >= -1e-12);
  }
}

TEST_CASE("omega operators") {
  for (double p : {0.0, 0.3, 0.5, 0.6, 1.0})
    CHECK(min_eigenvalue(omega_four(werner_state(p))) == doctest::Approx((1 - 2 * p) / 4).epsilon(1e-12));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) CHECK(min_eigenvalue(omega_four(sampling::random_separable(kTwoQubits, rng))) >= -1e-12);
  // real rho: omega_four = (rho + rho^{T_A})/2
  const DensityOperator w = werner_state(0.7);
  CHECK(omega_four(w).max_abs_diff((w.matrix() + partial_transpose(w.matrix(), kTwoQubits, Subsystem::A)) *
                                   Complex{0.5}) < 1e-15);
  // omega_half on the singlet: eigenvalues of (P + P^{T_A})/2
  CHECK(min_eigenvalue(omega_half(DensityOperator::from_pure(named::psi_minus()))) == doctest::Approx(-0.25));
  // a PPT-symmetric state is its own omega
  const DensityOperator mm = named::maximally_mixed({2, 3});
  CHECK(omega_half(mm).max_abs_diff(mm.matrix()) < 1e-15);
  // 2 x 3: (|00> + |11>)/sqrt2 mixed with noise
  const double r = std::sqrt(0.5);
  ComplexVector e(6, 0.0);
  e[0] = r;
  e[4] = r;
  const ComplexMatrix m = ComplexMatrix::projector(e) * Complex{0.8} + ComplexMatrix::identity(6) * Complex{0.2 / 6};
  CHECK(min_eigenvalue(omega_half(DensityOperator(m, {2, 3}))) < -1e-3);
  CHECK_THROWS_AS(omega_half(named::maximally_mixed({3, 2})), DimensionError);
}

TEST_CASE("symmetric witnesses see only omega") {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 50; ++s) {
    const WitnessOperator w = oew_eb4(random_params(rng));
    for (int t = 0; t < 20; ++t) {
      const DensityOperator rho = sampling::random_density(kTwoQubits, rng);
      CHECK(std::abs(tr(w.matrix, rho.matrix()) - tr(w.matrix, omega_four(rho))) < 1e-12);
    }
  }
}

TEST_CASE("minx examples") {
  CHECK(minx({1, 0, 1}, {1, 0, 1}) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(minx({1, 0, 4}, {4, 0, 1}) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(minx({1, 0, 0}, {0, 0, 1})) < 1e-8);
}

TEST_CASE("minx agrees with a zoomed grid oracle") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const RealSymmetric2 a = random_pd(rng), b = random_pd(rng);
    const double m = minx(a, b);
    CHECK(std::abs(m - minx_oracle(a, b)) < 1e-8);
    CHECK(std::abs(m - minx_real(a, b)) < 1e-9);
  }
}

TEST_CASE("x_min examples") {
  CHECK(x_min({1, 0, 1}, {1, 0, 1}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x_min({2, 0, 1}, {1, 0, 2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(x_min({1, 0, 0}, {1, 0, 1}), InvalidArgument);
}

TEST_CASE("x_min is the positivity boundary for every theta") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const RealSymmetric2 a = random_pd(rng), b = random_pd(rng);
    const double xm = x_min(a, b);
    for (double th : {0.0, kPi / 3, kPi}) CHECK(std::abs(x_min_bisection(a, b, th) - xm) < 1e-8);
    // commuting A, B close the detecting window: minx = x_min
  }
  CHECK(std::abs(minx({2, 0, 1}, {1, 0, 3}) - x_min({2, 0, 1}, {1, 0, 3})) < 1e-8);
}

TEST_CASE("two-state witness construction") {
  CHECK_THROWS_AS(two_state_witness({{1, 0, 1}, {1, 0, 1}, 0.0, 1.0}), NotDetectingError);
  CHECK(min_eigenvalue(two_state_operator({1, 0, 1}, {1, 0, 1}, 0.0, 1.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(two_state_witness({{1, 0, 1}, {1, 0, 1}, 0.0, 1.5}), InvalidArgument);
  CHECK_THROWS_AS(two_state_witness({{1, 0, 0}, {1, 0, 1}, 0.0, 0.1}), InvalidArgument);
  const RealSymmetric2 a{2.0, 0.0, 0.1}, b{1.0, 0.9, 1.0};
  REQUIRE(minx(a, b) > x_min(a, b) + 1e-3);
  const WitnessOperator w = two_state_witness_at_bound(a, b, 0.4);
  CHECK(w.family == WitnessFamily::W2);
  CHECK(min_eigenvalue(w.matrix) < -1e-6);
  CHECK(c_theta(0.7).max_abs_diff(tensor_product(pauli::x() * Complex{std::cos(0.7)} - pauli::y() * Complex{std::sin(0.7)},
                                                 ComplexMatrix::identity(2))) < 1e-15);
}

TEST_CASE("two-state witness support and family separation") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 100) {
    const RealSymmetric2 a = random_pd(rng), b = random_pd(rng);
    if (minx(a, b) <= x_min(a, b) + 1e-6) continue;
    ++checked;
    const double th = std::uniform_real_distribution<double>(0, 2 * kPi)(rng);
    const WitnessOperator w = two_state_witness_at_bound(a, b, th);
    const auto c = pauli_decompose(w.matrix);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const bool allowed = ((i == 0 || i == 3) && j != 2) || (j == 0 && (i == 1 || i == 2));
        if (!allowed) CHECK(std::abs(c[4 * i + j]) < 1e-12);
      }
    const bool in_eb4 = std::abs(c[8]) < 1e-12 && w.matrix.max_abs_diff(partial_transpose(w.matrix, kTwoQubits, Subsystem::B)) < 1e-12;
    CHECK_FALSE(in_eb4);
  }
}

TEST_CASE("maximally entangled states are invisible to C(theta)") {
  for (double th : {0.0, 0.5, 2.0}) {
    CHECK(std::abs(tr(c_theta(th), named::phi_plus().projector())) < 1e-15);
    CHECK(std::abs(tr(c_theta(th), named::psi_minus().projector())) < 1e-15);
  }
}

TEST_CASE("two-state witnesses at the bound are sound on separable states") {
  std::mt19937_64 rng(12);
  std::vector<WitnessOperator> ws;
  while (ws.size() < 20) {
    const RealSymmetric2 a = random_pd(rng), b = random_pd(rng);
    if (minx(a, b) <= x_min(a, b) + 1e-6) continue;
    ws.push_back(two_state_witness_at_bound(a, b, std::uniform_real_distribution<double>(0, 2 * kPi)(rng)));
  }
  double worst = 1.0;
  for (int t = 0; t < 10000; ++t) {
    const DensityOperator s = sampling::random_separable(kTwoQubits, rng, 1);
    worst = std::min(worst, tr(ws[t % ws.size()].matrix, s.matrix()));
  }
  CHECK(worst >= -1e-9);
}

TEST_CASE("larger x gives a finer witness when C(theta) is negative") {
  std::mt19937_64 rng(13);
  const RealSymmetric2 a{2.0, 0.0, 0.1}, b{1.0, 0.9, 1.0};
  const double th = 0.4, xm = minx(a, b);
  for (int t = 0; t < 100; ++t) {
    const DensityOperator rho = sampling::random_density(kTwoQubits, rng);
    if (tr(c_theta(th), rho.matrix()) >= 0) continue;
    for (double x : {0.0, 0.5 * xm, 0.9 * xm})
      CHECK(tr(two_state_operator(a, b, th, xm), rho.matrix()) <= tr(two_state_operator(a, b, th, x), rho.matrix()));
  }
}

TEST_CASE("pauli decomposition") {
  const auto c = pauli_decompose(ComplexMatrix::identity(4));
  CHECK(c[0] == 1.0);
  for (int k = 1; k < 16; ++k) CHECK(c[k] == 0.0);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix h = wk_test::random_hermitian(4, rng);
    CHECK(pauli_reconstruct(pauli_decompose(h)).max_abs_diff(h) < 1e-13);
  }
}

TEST_CASE("pseudo-mixture of the identity on four-state") {
  const ProtocolSpec s = make_protocol(ProtocolName::FourStateEb);
  const PseudoMixture pm = pseudo_mixture(custom_witness(ComplexMatrix::identity(4)), s);
  REQUIRE(pm.coefficients.size() == 16);
  const double c0 = pm.coefficients.begin()->second;
  for (const auto& [k, c] : pm.coefficients) CHECK(c == doctest::Approx(c0).epsilon(1e-12));
  CHECK(pm.evaluate(born_distribution(werner_state(0.3), s)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inaccessible support is rejected with the offending pairs") {
  const ProtocolSpec s = make_protocol(ProtocolName::FourStateEb);
  PauliCoefficients c{};
  c[0] = 1.0;
  c[4 * 2 + 1] = 0.5;  // sigma_y (x) sigma_x
  try {
    pseudo_mixture(custom_witness(pauli_reconstruct(c)), s);
    FAIL("expected InaccessibleWitnessError");
  } catch (const InaccessibleWitnessError& e) {
    CHECK(std::string(e.what()).find("(y,x)") != std::string::npos);
  }
}

TEST_CASE("prescribed witness for the unitary channel evaluates to -1/4") {
  const ProtocolSpec s = make_protocol(ProtocolName::FourStateEb);
  for (double th : {kPi / 12, kPi / 6, kPi / 4, kPi / 3, 5 * kPi / 12}) {
    const DensityOperator rho = apply_channel_to_b(named::phi_plus(), channel_kraus(UnitaryRotation{th}));
    const WitnessOperator w = oew_eb4_from_eigenvector(rho.matrix() * Complex{0.5});
    const JointDistribution d = born_distribution(rho, s);
    CHECK(std::abs(pseudo_mixture(w, s).evaluate(d) + 0.25) < 1e-9);
    CHECK(std::abs(evaluate(w, expectations(d, s)) + 0.25) < 1e-9);
  }
}

TEST_CASE("evaluate matches the direct trace") {
  std::mt19937_64 rng(15);
  const ProtocolSpec six = make_protocol(ProtocolName::SixState);
  const ProtocolSpec four = make_protocol(ProtocolName::FourStateEb);
  for (int t = 0; t < 100; ++t) {
    const DensityOperator rho = sampling::random_density(kTwoQubits, rng);
    const WitnessOperator w6 = custom_witness(wk_test::random_hermitian(4, rng));
    CHECK(std::abs(evaluate(w6, expectations(born_distribution(rho, six), six)) - tr(w6.matrix, rho.matrix())) < 1e-10);
    const WitnessOperator w4 = oew_eb4(random_params(rng));
    CHECK(std::abs(evaluate(w4, expectations(born_distribution(rho, four), four)) - tr(w4.matrix, rho.matrix())) < 1e-10);
  }
  // maximally mixed data reads off c_00
  const WitnessOperator w = custom_witness(wk_test::random_hermitian(4, rng));
  CHECK(evaluate(w, expectations(born_distribution(named::maximally_mixed(), six), six)) ==
        doctest::Approx(w.matrix.trace().real() / 4).epsilon(1e-12));
  AccessibleExpectations partial = expectations(born_distribution(named::maximally_mixed(), four), four);
  CHECK_THROWS_AS(evaluate(w, partial), InaccessibleWitnessError);
}
