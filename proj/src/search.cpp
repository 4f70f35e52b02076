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

#include "witnesskit/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "witnesskit/error.hpp"

namespace witnesskit::search {

LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
  constexpr double kInvPhi = 0.61803398874989484820;
  LineMinimum out;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  out.evaluations = 2;
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }
  if (fc < fd) {
    out.x = c;
    out.value = fc;
  } else {
    out.x = d;
    out.value = fd;
  }
  return out;
}

namespace {

double wrap(double x, const Axis& ax) {
  if (!ax.periodic) return std::clamp(x, ax.lower, ax.upper);
  const double span = ax.upper - ax.lower;
  double r = std::fmod(x - ax.lower, span);
  if (r < 0) r += span;
  return ax.lower + r;
}

}  // namespace

DescentResult coordinate_descent(const Objective& f, std::vector<double> start, std::span<const Axis> axes,
                                 const DescentOptions& options) {
  if (start.size() != axes.size()) throw InvalidArgument("coordinate_descent: one axis per coordinate required");
  DescentResult res;
  res.point = std::move(start);
  for (std::size_t k = 0; k < axes.size(); ++k) res.point[k] = wrap(res.point[k], axes[k]);
  res.value = f(res.point);
  res.evaluations = 1;

  std::vector<double> trial = res.point;
  for (int sweep = 0; sweep < options.max_iterations; ++sweep) {
    const double before = res.value;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const Axis& ax = axes[k];
      trial = res.point;
      auto line = [&](double t) {
        trial[k] = wrap(t, ax);
        ++res.evaluations;
        return f(trial);
      };
      const double x0 = res.point[k];
      double lo = x0 - ax.bracket, hi = x0 + ax.bracket;
      if (!ax.periodic) {
        lo = std::max(lo, ax.lower);
        hi = std::min(hi, ax.upper);
      }
      const int n = std::max(ax.samples, 2);
      const double step = (hi - lo) / static_cast<double>(n - 1);
      double best_t = x0, best_f = res.value;
      for (int s = 0; s < n; ++s) {
        const double t = lo + step * s;
        const double v = line(t);
        if (v < best_f) {
          best_f = v;
          best_t = t;
        }
      }
      double glo = best_t - step, ghi = best_t + step;
      if (!ax.periodic) {
        glo = std::max(glo, ax.lower);
        ghi = std::min(ghi, ax.upper);
      }
      const LineMinimum lm = golden_section(line, glo, ghi, options.xtol);
      if (lm.value < best_f) {
        best_f = lm.value;
        best_t = lm.x;
      }
      if (best_f < res.value) {
        res.point[k] = wrap(best_t, ax);
        res.value = best_f;
      }
    }
    res.iterations = sweep + 1;
    if (before - res.value < options.ftol * std::max(1.0, std::abs(res.value))) break;
  }
  return res;
}

DescentResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> scale,
                          std::span<const Axis> axes, const SimplexOptions& options) {
  const std::size_t n = start.size();
  if (axes.size() != n || scale.size() != n) throw InvalidArgument("nelder_mead: one axis and scale per coordinate");
  DescentResult res;
  auto eval = [&](std::vector<double>& x) {
    for (std::size_t k = 0; k < n; ++k) x[k] = wrap(x[k], axes[k]);
    ++res.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  res.point = std::move(start);
  res.value = eval(res.point);

  for (int round = 0; round <= options.restarts; ++round) {
    const double incumbent = res.value;
    std::vector<std::vector<double>> xs(n + 1, res.point);
    std::vector<double> fs(n + 1, res.value);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k + 1][k] += scale[k];
      fs[k + 1] = eval(xs[k + 1]);
    }
    std::vector<std::size_t> idx(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (res.evaluations < options.max_evaluations) {
      for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
      const std::size_t lo = idx.front(), hi = idx.back(), second = idx[n - 1];
      if (std::isfinite(fs[hi]) && fs[hi] - fs[lo] <= options.ftol * std::max(1.0, std::abs(fs[lo]))) break;
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i)
        if (i != hi)
          for (std::size_t k = 0; k < n; ++k) centroid[k] += xs[i][k] / static_cast<double>(n);
      for (std::size_t k = 0; k < n; ++k) xr[k] = 2.0 * centroid[k] - xs[hi][k];
      const double fr = eval(xr);
      if (fr < fs[lo]) {
        for (std::size_t k = 0; k < n; ++k) xe[k] = 3.0 * centroid[k] - 2.0 * xs[hi][k];
        const double fe = eval(xe);
        if (fe < fr) xs[hi] = xe, fs[hi] = fe;
        else xs[hi] = xr, fs[hi] = fr;
        continue;
      }
      if (fr < fs[second]) {
        xs[hi] = xr, fs[hi] = fr;
        continue;
      }
      const bool outside = fr < fs[hi];
      for (std::size_t k = 0; k < n; ++k)
        xc[k] = outside ? 0.5 * (centroid[k] + xr[k]) : 0.5 * (centroid[k] + xs[hi][k]);
      const double fc = eval(xc);
      if (fc < std::min(fr, fs[hi])) {
        xs[hi] = xc, fs[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == lo) continue;
        for (std::size_t k = 0; k < n; ++k) xs[i][k] = 0.5 * (xs[lo][k] + xs[i][k]);
        fs[i] = eval(xs[i]);
      }
    }
    const std::size_t best = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if (fs[best] < res.value) {
      res.value = fs[best];
      res.point = xs[best];
    }
    res.iterations = round + 1;
    if (!(incumbent - res.value > options.ftol * std::max(1.0, std::abs(res.value))) && round > 0) break;
    if (res.evaluations >= options.max_evaluations) break;
  }
  return res;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WITNESSKIT_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
      // unparsable values leave the default in place
    }
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t workers) {
  if (workers == 0) workers = worker_count();
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace witnesskit::search
