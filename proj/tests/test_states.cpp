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

#include <random>

#include "test_support.hpp"
#include "witnesskit/error.hpp"
#include "witnesskit/states.hpp"

using namespace witnesskit;

TEST_CASE("pure state validation") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}, {1, 2}), InvalidArgument);
  CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}, kTwoQubits), DimensionError);
  const PureState p = PureState::from_unnormalized({3.0, 4.0}, {1, 2});
  CHECK(p.amplitudes()[0].real() == doctest::Approx(0.6));
}

TEST_CASE("density operator validation") {
  ComplexMatrix m = ComplexMatrix::identity(4) * Complex{0.25};
  CHECK_NOTHROW(DensityOperator(m, kTwoQubits));
  m(0, 0) = 0.5;
  CHECK_THROWS_AS(DensityOperator(m, kTwoQubits), InvalidArgument);  // trace
  ComplexMatrix neg = ComplexMatrix::diagonal(std::vector<double>{1.2, -0.2});
  CHECK_THROWS_AS(DensityOperator(neg, {1, 2}), InvalidArgument);
  ComplexMatrix nh = ComplexMatrix::identity(2) * Complex{0.5};
  nh(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityOperator(nh, {1, 2}), InvalidArgument);
}

TEST_CASE("schmidt decomposition reconstructs random states") {
  std::mt19937_64 rng(21);
  for (DimSplit s : {DimSplit{2, 2}, DimSplit{2, 3}, DimSplit{3, 2}}) {
    for (int t = 0; t < 50; ++t) {
      const PureState psi = sampling::random_pure_state(s, rng);
      const auto sd = schmidt_decompose(psi);
      const ComplexVector rec = sd.reconstruct();
      double err = 0.0;
      for (std::size_t i = 0; i < rec.size(); ++i) err = std::max(err, std::abs(rec[i] - psi.amplitudes()[i]));
      CHECK(err < 1e-10);
      double sq = 0.0;
      for (std::size_t k = 0; k < sd.coefficients.size(); ++k) {
        sq += sd.coefficients[k] * sd.coefficients[k];
        if (k) CHECK(sd.coefficients[k] <= sd.coefficients[k - 1]);
      }
      CHECK(sq == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  const auto prod = schmidt_decompose(PureState({0.6, 0.8, 0.0, 0.0}, kTwoQubits));
  CHECK(prod.coefficients.size() == 1);
  const auto bell = schmidt_decompose(named::phi_plus());
  REQUIRE(bell.coefficients.size() == 2);
  CHECK(bell.coefficients[0] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("werner states cross the PPT boundary at p = 1/3") {
  CHECK(is_ppt(werner_state(0.3)));
  CHECK(is_ppt(werner_state(1.0 / 3.0)));
  CHECK_FALSE(is_ppt(werner_state(0.34)));
  CHECK_FALSE(is_ppt(DensityOperator::from_pure(named::psi_minus())));
  CHECK(is_ppt(named::maximally_mixed()));
  // PT spectrum of the Werner state: min eigenvalue (1 - 3p)/4
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    const double lam = min_eigenvalue(partial_transpose(werner_state(p).matrix(), kTwoQubits, Subsystem::A));
    CHECK(lam == doctest::Approx((1.0 - 3.0 * p) / 4.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(werner_state(1.5), InvalidArgument);
}

TEST_CASE("random separable states are PPT") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) CHECK(is_ppt(sampling::random_separable(kTwoQubits, rng)));
}

TEST_CASE("reduced states") {
  const DensityOperator rho = DensityOperator::from_pure(named::phi_plus());
  CHECK(rho.reduced_a().matrix().max_abs_diff(ComplexMatrix::identity(2) * Complex{0.5}) < 1e-15);
  CHECK(rho.reduced_b().matrix().max_abs_diff(ComplexMatrix::identity(2) * Complex{0.5}) < 1e-15);
}

TEST_CASE("prepare-and-measure source state") {
  const double a = 0.4, b = std::sqrt(1 - a * a);
  const std::vector<PureState> sig{PureState::single({a, b}), PureState::single({a, -b})};
  const std::vector<double> pr{0.5, 0.5};
  const PureState src = pm_source_state(sig, pr);
  // rho_A = sum_ij sqrt(p_i p_j) <phi_j|phi_i> |i><j|
  const ComplexMatrix ra = DensityOperator::from_pure(src).reduced_a().matrix();
  CHECK(ra(0, 0).real() == doctest::Approx(0.5));
  CHECK(ra(0, 1).real() == doctest::Approx(0.5 * (a * a - b * b)));
  CHECK_THROWS_AS(pm_source_state(sig, std::vector<double>{0.5}), InvalidArgument);
}

TEST_CASE("random Kraus sets are trace preserving") {
  std::mt19937_64 rng(4);
  for (std::size_t count : {1u, 2u, 4u}) {
    const auto k = sampling::random_kraus(2, count, rng);
    ComplexMatrix s(2);
    for (const auto& m : k) s += m.adjoint() * m;
    CHECK(s.max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
    const DensityOperator out = apply_channel_to_b(sampling::random_density(kTwoQubits, rng), k);
    CHECK(out.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("channel application keeps the A marginal") {
  std::mt19937_64 rng(9);
  const DensityOperator rho = sampling::random_density(kTwoQubits, rng);
  const auto k = sampling::random_kraus(2, 3, rng);
  CHECK(apply_channel_to_b(rho, k).reduced_a().matrix().max_abs_diff(rho.reduced_a().matrix()) < 1e-12);
}
