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

// Derivative-free minimization helpers and a deterministic parallel loop.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace witnesskit::search {

struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a minimum of f on [lo, hi], stopping once the
/// bracket is narrower than tol.
LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10,
                           int max_iter = 200);

struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  bool periodic = false;  // wrap into [lower, upper)
  double bracket = 1.0;   // half-width of the 1-D window sampled around the current point
  int samples = 12;       // coarse samples in that window before golden-section
};

struct DescentResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

struct DescentOptions {
  int max_iterations = 200;  // full sweeps over all coordinates
  double ftol = 1e-10;       // stop when a sweep improves by less than this
  double xtol = 1e-10;       // golden-section bracket width
};

using Objective = std::function<double(std::span<const double>)>;

/// Coordinate-wise golden-section descent. Each coordinate step samples its
/// window coarsely, then refines around the best sample; a step is taken only
/// if it lowers the objective.
DescentResult coordinate_descent(const Objective& f, std::vector<double> start, std::span<const Axis> axes,
                                 const DescentOptions& options = {});

struct SimplexOptions {
  int max_evaluations = 20000;
  double ftol = 1e-13;  // spread of simplex values at convergence
  int restarts = 4;     // fresh simplices around the incumbent after convergence
};

/// Nelder-Mead from `start` with initial edge lengths `scale`. Points are
/// mapped onto the axes (wrapped or clamped) before each evaluation, and the
/// incumbent never gets worse.
DescentResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> scale,
                          std::span<const Axis> axes, const SimplexOptions& options = {});

/// Worker count: hardware concurrency capped by WITNESSKIT_THREADS.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write results into per-index slots so merging stays deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t workers = 0);

}  // namespace witnesskit::search
