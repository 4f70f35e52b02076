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

// Witness families accessible to the six-, four- and two-state protocols.
//
// The partial transposition T_P used by the families is taken on the B
// factor. Family constructors return operators unnormalized.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "witnesskit/linalg.hpp"
#include "witnesskit/protocols.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

enum class WitnessFamily { Oew, OewEb4, W2, Custom };

std::string to_string(WitnessFamily family);

/// Hyperspherical angles of a real two-qubit state
///   cos(phi)|00> + sin(phi)(cos(psi)|01> + sin(psi)(cos(theta)|10> + sin(theta)|11>)).
struct FourStateParams {
  double phi = 0.0;
  double psi = 0.0;
  double theta = 0.0;
  auto operator<=>(const FourStateParams&) const = default;
};

/// sin(phi) sin(psi) (sin(phi) cos(psi) cos(theta) - cos(phi) sin(theta));
/// zero exactly when the parametrized state is a product state.
double entanglement_condition(const FourStateParams& p);

/// [[xx, xy], [xy, yy]]
struct RealSymmetric2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  bool positive_definite() const { return xx > 0.0 && det() > 0.0; }
  bool positive_semidefinite(double tol = 0.0) const;
  ComplexMatrix matrix() const { return {{xx, xy}, {xy, yy}}; }
  auto operator<=>(const RealSymmetric2&) const = default;
};

struct TwoStateParams {
  RealSymmetric2 a_op;
  RealSymmetric2 b_op;
  double theta = 0.0;
  double x = 0.0;
};

using PauliCoefficients = std::array<double, 16>;  // index 4*i + j

struct WitnessOperator {
  ComplexMatrix matrix;
  WitnessFamily family = WitnessFamily::Custom;
  std::variant<std::monostate, FourStateParams, TwoStateParams, ComplexVector> params;
  /// Set when the operator is positive semi-definite (detects nothing).
  bool trivial = false;
};

/// |phi_e><phi_e|^{T_B}. Throws InvalidArgument for a product state.
WitnessOperator oew_two_qubit(const PureState& phi_e, const Tolerances& tol = kDefaultTolerances);

PureState real_entangled_state(const FourStateParams& p);

/// Inverse of real_entangled_state for a real vector (normalized first);
/// angles are returned in [0, 2pi).
FourStateParams four_state_params(std::span<const Complex> v);

/// (Q + Q^{T_B}) / 2 with Q the projector on real_entangled_state(p).
/// Product-state parameters give a PSD operator, flagged `trivial`.
WitnessOperator oew_eb4(const FourStateParams& p, const Tolerances& tol = kDefaultTolerances);

/// oew_eb4 built from the eigenvector of rho^{T_B} at its most negative
/// eigenvalue. rho must be a real two-qubit operator with an NPT spectrum;
/// throws InvalidArgument otherwise.
WitnessOperator oew_eb4_from_eigenvector(const ComplexMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// (rho + rho^{T_A} + rho^{T_B} + rho^T) / 4 on two qubits.
ComplexMatrix omega_four(const DensityOperator& rho);

/// (rho + rho^{T_A}) / 2 on a 2 x N system. Throws DimensionError unless dim_a = 2.
ComplexMatrix omega_half(const DensityOperator& rho);

/// min over unit |psi> in C^2 of sqrt(<psi|A|psi><psi|B|psi>), searched on the
/// full Bloch sphere (64 x 64 grid, then golden-section refinement).
double minx(const RealSymmetric2& a, const RealSymmetric2& b);

/// Same bound restricted to real |psi>. For real symmetric A, B the quadratic
/// forms do not depend on the y Bloch component, and the product of two
/// positive affine functions has no interior minimum on the Bloch disk, so
/// this agrees with minx. Used inside the two-state search.
double minx_real(const RealSymmetric2& a, const RealSymmetric2& b);

/// sqrt(alpha/2 - sqrt(alpha^2/4 - det A det B)), alpha = Tr(AB). Throws
/// InvalidArgument unless A and B are positive definite.
double x_min(const RealSymmetric2& a, const RealSymmetric2& b);

/// [[0, e^{i theta} 1], [e^{-i theta} 1, 0]] = (cos theta sigma_x - sin theta sigma_y) (x) 1
ComplexMatrix c_theta(double theta);

/// |0><0| (x) A + |1><1| (x) B + x C(theta) without any validation.
ComplexMatrix two_state_operator(const RealSymmetric2& a, const RealSymmetric2& b, double theta, double x);

/// Validated member of the two-state verification family. Throws
/// InvalidArgument unless A, B > 0 and x <= minx(A, B) + tol.zero;
/// NotDetectingError when x <= x_min(A, B) (the operator is PSD).
WitnessOperator two_state_witness(const TwoStateParams& p, const Tolerances& tol = kDefaultTolerances);

/// Family member with x fixed at minx(A, B).
WitnessOperator two_state_witness_at_bound(const RealSymmetric2& a, const RealSymmetric2& b, double theta,
                                           const Tolerances& tol = kDefaultTolerances);

WitnessOperator custom_witness(ComplexMatrix m);

/// c_ij = Tr[(sigma_i (x) sigma_j) W] / 4 for a 4 x 4 Hermitian W.
PauliCoefficients pauli_decompose(const ComplexMatrix& w);
ComplexMatrix pauli_reconstruct(const PauliCoefficients& c);

/// Tr(W rho) = sum_i c_i P(A_i, B_i) + residual, where `residual` collects
/// one-sided Alice terms resolved against the fixed reduced state.
struct PseudoMixture {
  std::map<JointDistribution::Key, double> coefficients;
  std::map<int, double> residual_terms;  // Alice Pauli index -> c_{k0}
  double residual = 0.0;

  double evaluate(const JointDistribution& dist) const;
};

struct PseudoMixtureOptions {
  bool inject_fixed_rho_a = true;
  std::optional<ComplexMatrix> fixed_rho_a;  // overrides spec.fixed_rho_a
};

/// Throws InaccessibleWitnessError naming every Pauli pair the protocol
/// cannot reach.
PseudoMixture pseudo_mixture(const WitnessOperator& w, const ProtocolSpec& spec,
                             const PseudoMixtureOptions& options = {});

/// sum_ij c_ij <sigma_i (x) sigma_j>. Throws InaccessibleWitnessError when a
/// non-zero coefficient has no available expectation.
double evaluate(const WitnessOperator& w, const AccessibleExpectations& ex);
double evaluate(const PauliCoefficients& c, const AccessibleExpectations& ex);

}  // namespace witnesskit
