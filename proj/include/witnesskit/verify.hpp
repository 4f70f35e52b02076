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

// Verification engines: decide from P(A,B) whether entanglement is certified.
// A negative verdict never asserts separability of the underlying state.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "witnesskit/protocols.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witnesses.hpp"

namespace witnesskit {

enum class Verdict { EntanglementProven, NotProvable, Inconclusive };

/// "entanglement_proven", "not_provable_from_data", "inconclusive"
std::string to_string(Verdict v);

/// value < -detect: proven; -detect <= value < -zero: inconclusive;
/// otherwise not provable.
Verdict verdict_for(double value, const Tolerances& tol = kDefaultTolerances);

struct WitnessCandidate {
  WitnessFamily family = WitnessFamily::Custom;
  std::variant<std::monostate, FourStateParams, TwoStateParams, ComplexVector> params;
  ComplexMatrix matrix;
  PseudoMixture pseudo_mixture;
};

struct SearchCoverage {
  std::string method;
  std::size_t grid_points = 0;
  std::size_t starts = 0;
  std::size_t refined = 0;
  std::size_t skipped = 0;  // parameter points outside the detecting region
  std::size_t evaluations = 0;
};

struct VerificationReport {
  std::string protocol;
  Verdict verdict = Verdict::NotProvable;
  double best_value = 0.0;
  std::optional<WitnessCandidate> best_witness;
  double qber = 0.0;
  std::vector<std::string> warnings;
  SearchCoverage coverage;
};

struct VerifyOptions {
  Tolerances tol = kDefaultTolerances;
  int grid_resolution = 24;     // four-state grid points per axis
  int refine_seeds = 8;         // best grid cells refined
  int max_iterations = 200;     // sweeps per local refinement
  int two_state_starts = 256;   // random multistart points
  int two_state_refine = 16;    // best starts refined
  std::uint64_t seed = 0x5eed;  // two-state multistart generator
  std::size_t threads = 0;      // 0 = search::worker_count()
  bool inject_fixed_rho_a = true;
  std::optional<ComplexMatrix> fixed_rho_a;  // overrides the protocol's reduced state
};

enum class FourStateVariant { Eb, Pm };

VerificationReport verify_six_state(const JointDistribution& dist, const VerifyOptions& options = {});
VerificationReport verify_four_state(const JointDistribution& dist, FourStateVariant variant,
                                     const VerifyOptions& options = {});
/// Throws InvalidArgument unless 0 < alpha < 1/sqrt2.
VerificationReport verify_two_state(const JointDistribution& dist, double alpha, const VerifyOptions& options = {});

struct ScanAxis {
  std::string name;
  std::vector<double> points;
};

struct ScanGrid {
  std::array<ScanAxis, 3> axes;
  std::vector<double> values;  // row-major, last axis fastest
  std::vector<bool> detected_mask;

  std::size_t size() const { return values.size(); }
  double detected_fraction() const;
};

/// Full (phi, psi, theta) grid over [0, 2pi)^3 of oew_eb4 expectation values.
ScanGrid scan_four_state(const JointDistribution& dist, std::array<int, 3> resolution,
                         FourStateVariant variant = FourStateVariant::Eb, const VerifyOptions& options = {});

enum class DetectabilityClass { FourState, TwoTimesN };

/// FourState: omega_four(rho) non-positive, necessary and sufficient for
/// four-state detection. TwoTimesN: omega_half(rho) non-positive, necessary only.
bool detectability_oracle(const DensityOperator& rho, DetectabilityClass cls,
                          const Tolerances& tol = kDefaultTolerances);

/// Real symmetric matrix Omega with v^T Omega v = Tr(oew_eb4 rho) for the
/// real unit vector v of the family member; built from the {0,x,z}^2
/// expectations. Its smallest eigenvalue is the best attainable value.
std::array<double, 16> four_state_form(const AccessibleExpectations& ex);

}  // namespace witnesskit
