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

namespace witnesskit {

/// Numerical bands used throughout the library. Every strict inequality
/// ("non-positive", "negative expectation") is decided against one of these.
struct Tolerances {
  double hermitian = 1e-10;       // |M - M^dagger| entrywise
  double zero = 1e-9;             // positivity boundary for eigenvalues
  double reconstruction = 1e-9;   // eigendecomposition reconstruction
  double jacobi_offdiag = 1e-12;  // Jacobi convergence, off-diagonal Frobenius
  double detect = 1e-7;           // witness value must be < -detect
  double state = 1e-6;            // reconstructed state may dip this far below 0
  double marginal = 5e-3;         // cross-setting marginal consistency
  double entangled = 1e-9;        // four-state parameter entanglement condition
  double normalization = 1e-8;    // sum of a joint distribution
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace witnesskit
