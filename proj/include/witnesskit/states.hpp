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

#include <random>
#include <span>
#include <vector>

#include "witnesskit/linalg.hpp"

namespace witnesskit {

/// Unit-norm bipartite (or single-system, dim_a = 1) pure state.
class PureState {
 public:
  /// Throws InvalidArgument unless |amplitudes| = 1 within 1e-10 and the
  /// split matches the amplitude count.
  PureState(ComplexVector amplitudes, DimSplit split);
  /// Single-system state (split 1 x n).
  static PureState single(ComplexVector amplitudes);
  /// Normalizes before validating.
  static PureState from_unnormalized(ComplexVector amplitudes, DimSplit split);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  DimSplit split() const { return split_; }
  std::size_t dim() const { return amplitudes_.size(); }
  ComplexMatrix projector() const { return ComplexMatrix::projector(amplitudes_); }

 private:
  ComplexVector amplitudes_;
  DimSplit split_;
};

/// Hermitian, unit-trace, positive semi-definite operator on A (x) B.
class DensityOperator {
 public:
  /// Validates Hermiticity, trace and positivity against tol.
  DensityOperator(ComplexMatrix matrix, DimSplit split, const Tolerances& tol = kDefaultTolerances);
  static DensityOperator from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const { return matrix_; }
  DimSplit split() const { return split_; }
  std::size_t dim() const { return matrix_.dim(); }
  DensityOperator reduced_a() const;
  DensityOperator reduced_b() const;

 private:
  ComplexMatrix matrix_;
  DimSplit split_;
};

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, non-zero
  std::vector<ComplexVector> left_basis;
  std::vector<ComplexVector> right_basis;

  ComplexVector reconstruct() const;
};

SchmidtDecomposition schmidt_decompose(const PureState& psi, const Tolerances& tol = kDefaultTolerances);

/// Peres-Horodecki test: min eigenvalue of rho^{T_A} >= -tol.zero.
bool is_ppt(const DensityOperator& rho, const Tolerances& tol = kDefaultTolerances);

namespace named {
PureState ket0();
PureState ket1();
PureState ket_plus();
PureState ket_minus();
PureState phi_plus();   // (|00> + |11>)/sqrt2
PureState psi_minus();  // (|01> - |10>)/sqrt2
DensityOperator maximally_mixed(DimSplit split = kTwoQubits);
}  // namespace named

/// p |psi-><psi-| + (1 - p) 1/4. Throws InvalidArgument for p outside [0, 1].
DensityOperator werner_state(double p);

/// sum_i sqrt(p_i) |i>_A |phi_i>_B with Alice's register of dimension
/// signals.size(). Throws InvalidArgument on unnormalized probabilities.
PureState pm_source_state(std::span<const PureState> signals, std::span<const double> probs);

/// (1 (x) Phi)(rho) for Phi given by its Kraus operators on B.
DensityOperator apply_channel_to_b(const DensityOperator& rho, std::span<const ComplexMatrix> kraus);
DensityOperator apply_channel_to_b(const PureState& psi, std::span<const ComplexMatrix> kraus);

/// Test ensembles. Complex Gaussian pure states, M M^dagger mixed states of
/// the given rank (0 = full) and Dirichlet-uniform mixtures of product states.
namespace sampling {
PureState random_pure_state(DimSplit split, std::mt19937_64& rng);
DensityOperator random_density(DimSplit split, std::mt19937_64& rng, std::size_t rank = 0);
DensityOperator random_separable(DimSplit split, std::mt19937_64& rng, std::size_t terms = 4);
/// Random channel on a d-dimensional system with `count` Kraus operators,
/// taken from a Haar-like random isometry.
std::vector<ComplexMatrix> random_kraus(std::size_t dim, std::size_t count, std::mt19937_64& rng);
}  // namespace sampling

}  // namespace witnesskit
