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

#include "witnesskit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "witnesskit/error.hpp"
#include "witnesskit/search.hpp"

namespace witnesskit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

ExpectationOptions expectation_options(const VerifyOptions& o) {
  ExpectationOptions e;
  e.inject_fixed_rho_a = o.inject_fixed_rho_a;
  e.fixed_rho_a = o.fixed_rho_a;
  e.tol = o.tol;
  return e;
}

PseudoMixtureOptions mixture_options(const VerifyOptions& o) {
  PseudoMixtureOptions m;
  m.inject_fixed_rho_a = o.inject_fixed_rho_a;
  m.fixed_rho_a = o.fixed_rho_a;
  return m;
}

std::size_t workers(const VerifyOptions& o) { return o.threads == 0 ? search::worker_count() : o.threads; }

void fill_qber(VerificationReport& r, const JointDistribution& dist, const ProtocolSpec& spec) {
  try {
    r.qber = qber(dist, spec);
  } catch (const DataError& e) {
    r.qber = std::numeric_limits<double>::quiet_NaN();
    r.warnings.emplace_back(e.what());
  }
}

WitnessCandidate candidate(const WitnessOperator& w, const ProtocolSpec& spec, const VerifyOptions& o) {
  WitnessCandidate c;
  c.family = w.family;
  c.params = w.params;
  c.matrix = w.matrix;
  c.pseudo_mixture = pseudo_mixture(w, spec, mixture_options(o));
  return c;
}

// Real amplitudes of real_entangled_state without the validation overhead.
std::array<double, 4> angles_to_vector(double phi, double psi, double theta) {
  const double sp = std::sin(phi), ss = std::sin(psi);
  return {std::cos(phi), sp * std::cos(psi), sp * ss * std::cos(theta), sp * ss * std::sin(theta)};
}

double quadratic(const std::array<double, 16>& m, const std::array<double, 4>& v) {
  double s = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < 4; ++c) row += m[r * 4 + c] * v[c];
    s += v[r] * row;
  }
  return s;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::EntanglementProven: return "entanglement_proven";
    case Verdict::NotProvable: return "not_provable_from_data";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_for(double value, const Tolerances& tol) {
  if (!std::isfinite(value)) return Verdict::Inconclusive;
  if (value < -tol.detect) return Verdict::EntanglementProven;
  if (value < -tol.zero) return Verdict::Inconclusive;
  return Verdict::NotProvable;
}

double ScanGrid::detected_fraction() const {
  if (detected_mask.empty()) return 0.0;
  const auto n = std::count(detected_mask.begin(), detected_mask.end(), true);
  return static_cast<double>(n) / static_cast<double>(detected_mask.size());
}

bool detectability_oracle(const DensityOperator& rho, DetectabilityClass cls, const Tolerances& tol) {
  if (cls == DetectabilityClass::FourState) return min_eigenvalue(omega_four(rho), tol) < -tol.zero;
  return min_eigenvalue(omega_half(rho), tol) < -tol.zero;
}

// ---- six-state ----

VerificationReport verify_six_state(const JointDistribution& dist, const VerifyOptions& options) {
  const ProtocolSpec spec = make_protocol(ProtocolName::SixState);
  const AccessibleExpectations ex = expectations(dist, spec, expectation_options(options));
  VerificationReport r;
  r.protocol = to_string(spec.name);
  r.warnings = ex.warnings;
  fill_qber(r, dist, spec);
  r.coverage.method = "linear_inversion+partial_transpose";

  PauliCoefficients c{};
  for (std::size_t k = 0; k < 16; ++k) c[k] = 0.25 * ex.value[k];
  const ComplexMatrix rho = pauli_reconstruct(c);
  if (!rho.all_finite()) throw NumericError("verify_six_state: reconstruction is not finite");
  const double rho_min = min_eigenvalue(rho, options.tol);
  const bool bad_data = rho_min < -options.tol.state;
  if (bad_data) {
    std::ostringstream os;
    os.precision(12);
    os << "reconstructed state has eigenvalue " << rho_min << " below -" << options.tol.state;
    r.warnings.push_back(os.str());
  }

  const HermitianSpectrum sp = hermitian_eig(partial_transpose(rho, kTwoQubits, Subsystem::B), options.tol);
  r.coverage.evaluations = 1;
  r.best_value = sp.eigenvalues.front();
  if (r.best_value < -options.tol.zero) {
    try {
      const PureState phi = PureState::from_unnormalized(sp.eigenvectors.front(), kTwoQubits);
      const WitnessOperator w = oew_two_qubit(phi, options.tol);
      r.best_value = evaluate(w, ex);
      r.best_witness = candidate(w, spec, options);
    } catch (const InvalidArgument& e) {
      r.warnings.emplace_back(e.what());
    }
  }
  r.verdict = bad_data ? Verdict::Inconclusive : verdict_for(r.best_value, options.tol);
  return r;
}

// ---- four-state ----

std::array<double, 16> four_state_form(const AccessibleExpectations& ex) {
  static constexpr int kIdx[3] = {0, 1, 3};
  std::array<double, 16> m{};
  for (int i : kIdx)
    for (int j : kIdx) {
      if (!ex.has(i, j))
        throw InaccessibleWitnessError(std::string("four-state form needs <s") + "0xyz"[i] + " s" + "0xyz"[j] + ">");
      const double t = 0.25 * ex.at(i, j);
      const ComplexMatrix p = tensor_product(pauli::by_index(i), pauli::by_index(j));
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m[r * 4 + c] += t * p(r, c).real();
    }
  return m;
}

namespace {

ProtocolSpec four_state_spec(FourStateVariant v) {
  return make_protocol(v == FourStateVariant::Eb ? ProtocolName::FourStateEb : ProtocolName::FourStatePm);
}

std::vector<double> four_state_grid(const std::array<double, 16>& form, std::array<int, 3> res, std::size_t threads) {
  for (int n : res)
    if (n < 1) throw InvalidArgument("four-state grid resolution must be >= 1 per axis");
  const std::size_t n0 = res[0], n1 = res[1], n2 = res[2];
  std::vector<double> values(n0 * n1 * n2);
  search::parallel_for(
      n0,
      [&](std::size_t i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n0);
        for (std::size_t j = 0; j < n1; ++j) {
          const double psi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n1);
          for (std::size_t k = 0; k < n2; ++k) {
            const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n2);
            values[(i * n1 + j) * n2 + k] = quadratic(form, angles_to_vector(phi, psi, theta));
          }
        }
      },
      threads);
  return values;
}

}  // namespace

VerificationReport verify_four_state(const JointDistribution& dist, FourStateVariant variant,
                                     const VerifyOptions& options) {
  const ProtocolSpec spec = four_state_spec(variant);
  const AccessibleExpectations ex = expectations(dist, spec, expectation_options(options));
  VerificationReport r;
  r.protocol = to_string(spec.name);
  r.warnings = ex.warnings;
  fill_qber(r, dist, spec);

  const std::array<double, 16> form = four_state_form(ex);
  const int n = options.grid_resolution;
  const std::vector<double> grid = four_state_grid(form, {n, n, n}, workers(options));
  r.coverage.method = "grid+coordinate_descent";
  r.coverage.grid_points = grid.size();

  // Seeds: lowest values, ties broken by grid order (lexicographic angles).
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(options.refine_seeds, 1)), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return grid[a] < grid[b] || (grid[a] == grid[b] && a < b); });

  const double step = 2.0 * kPi / n;
  const std::array<search::Axis, 3> axes{search::Axis{0.0, 2.0 * kPi, true, 2.0 * step, 7},
                                         search::Axis{0.0, 2.0 * kPi, true, 2.0 * step, 7},
                                         search::Axis{0.0, 2.0 * kPi, true, 2.0 * step, 7}};
  search::DescentOptions dopt;
  dopt.max_iterations = options.max_iterations;
  const search::Objective f = [&](std::span<const double> q) {
    return quadratic(form, angles_to_vector(q[0], q[1], q[2]));
  };
  std::vector<search::DescentResult> refined(k);
  search::parallel_for(
      k,
      [&](std::size_t s) {
        const std::size_t idx = order[s];
        const std::size_t nn = static_cast<std::size_t>(n);
        std::vector<double> start{step * static_cast<double>(idx / (nn * nn)),
                                  step * static_cast<double>((idx / nn) % nn), step * static_cast<double>(idx % nn)};
        refined[s] = search::coordinate_descent(f, std::move(start), axes, dopt);
      },
      workers(options));

  std::size_t best = 0;
  for (std::size_t s = 1; s < k; ++s)
    if (refined[s].value < refined[best].value ||
        (refined[s].value == refined[best].value && refined[s].point < refined[best].point))
      best = s;
  r.coverage.refined = k;
  r.coverage.evaluations = grid.size();
  for (const auto& d : refined) r.coverage.evaluations += static_cast<std::size_t>(d.evaluations);

  const auto& q = refined[best].point;
  const WitnessOperator w = oew_eb4(FourStateParams{q[0], q[1], q[2]}, options.tol);
  r.best_value = evaluate(w, ex);
  r.best_witness = candidate(w, spec, options);
  r.verdict = verdict_for(r.best_value, options.tol);
  return r;
}

ScanGrid scan_four_state(const JointDistribution& dist, std::array<int, 3> resolution, FourStateVariant variant,
                         const VerifyOptions& options) {
  const ProtocolSpec spec = four_state_spec(variant);
  const AccessibleExpectations ex = expectations(dist, spec, expectation_options(options));
  ScanGrid g;
  static constexpr const char* kNames[3] = {"phi", "psi", "theta"};
  g.values = four_state_grid(four_state_form(ex), resolution, workers(options));
  for (int a = 0; a < 3; ++a) {
    g.axes[a].name = kNames[a];
    for (int i = 0; i < resolution[a]; ++i) g.axes[a].points.push_back(2.0 * kPi * i / resolution[a]);
  }
  g.detected_mask.resize(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) g.detected_mask[i] = g.values[i] < -options.tol.detect;
  return g;
}

// ---- two-state ----

namespace {

// q = (a1, a2, a3, b1, b2, b3, theta): rotation angle and log-eigenvalues
// of A and B, then the C(theta) phase. Tr A + Tr B is scaled to 2.
constexpr std::size_t kTwoStateDim = 7;
constexpr double kLogBound = 8.0;

RealSymmetric2 rotated(double angle, double l1, double l2) {
  const double c = std::cos(angle), s = std::sin(angle), e1 = std::exp(l1), e2 = std::exp(l2);
  return {c * c * e1 + s * s * e2, c * s * (e1 - e2), s * s * e1 + c * c * e2};
}

struct TwoStatePoint {
  RealSymmetric2 a, b;
  double theta;
};

TwoStatePoint decode(std::span<const double> q) {
  TwoStatePoint p{rotated(q[0], q[1], q[2]), rotated(q[3], q[4], q[5]), q[6]};
  const double s = 2.0 / (p.a.trace() + p.b.trace());
  for (RealSymmetric2* m : {&p.a, &p.b}) {
    m->xx *= s;
    m->xy *= s;
    m->yy *= s;
  }
  return p;
}

// Tr(W2 rho) from the accessible expectations, with W2 expanded as
// |0><0| = (1 + s_z)/2, |1><1| = (1 - s_z)/2, C(theta) = (cos s_x - sin s_y) (x) 1.
double two_state_value(const TwoStatePoint& p, double x, const AccessibleExpectations& ex) {
  const std::array<int, 3> bob{0, 1, 3};
  const std::array<double, 3> al{0.5 * p.a.trace(), p.a.xy, 0.5 * (p.a.xx - p.a.yy)};
  const std::array<double, 3> bl{0.5 * p.b.trace(), p.b.xy, 0.5 * (p.b.xx - p.b.yy)};
  double v = 0.0;
  for (std::size_t l = 0; l < 3; ++l)
    v += 0.5 * (al[l] + bl[l]) * ex.at(0, bob[l]) + 0.5 * (al[l] - bl[l]) * ex.at(3, bob[l]);
  if (x != 0.0) v += x * (std::cos(p.theta) * ex.at(1, 0) - std::sin(p.theta) * ex.at(2, 0));
  return v;
}

}  // namespace

VerificationReport verify_two_state(const JointDistribution& dist, double alpha, const VerifyOptions& options) {
  if (!(alpha > 0.0 && alpha < std::sqrt(0.5))) throw InvalidArgument("verify_two_state: alpha must lie in (0, 1/sqrt2)");
  ProtocolParams pp;
  pp.alpha = alpha;
  const ProtocolSpec spec = make_protocol(ProtocolName::TwoState, pp);
  const AccessibleExpectations ex = expectations(dist, spec, expectation_options(options));
  VerificationReport r;
  r.protocol = to_string(spec.name);
  r.warnings = ex.warnings;
  fill_qber(r, dist, spec);
  r.coverage.method = "multistart+coordinate_descent+nelder_mead";

  if (!ex.has(1, 0) || !ex.has(2, 0)) {
    // Without <s_x (x) 1>, <s_y (x) 1> the only accessible members have x = 0,
    // i.e. |0><0| (x) A + |1><1| (x) B, which is PSD.
    r.warnings.emplace_back(
        "Alice one-sided x/y expectations unavailable without the fixed reduced state; every accessible family member "
        "is positive semi-definite");
    r.coverage.method = "none: no accessible detecting member";
    r.best_value = 0.0;
    r.verdict = Verdict::NotProvable;
    return r;
  }

  // The value is linear in (cos theta, sin theta) with weight x > 0, so the
  // theta coordinate is minimized exactly: theta = atan2(<s_y>, -<s_x>).
  const double best_theta = std::atan2(ex.at(2, 0), -ex.at(1, 0));
  std::atomic<std::size_t> evals{0};
  const search::Objective f = [&](std::span<const double> q) {
    ++evals;
    TwoStatePoint p = decode(q);
    p.theta = best_theta;
    if (!p.a.positive_definite() || !p.b.positive_definite()) return kInf;
    const double x = minx_real(p.a, p.b);
    if (x <= x_min(p.a, p.b) + options.tol.zero) return kInf;
    return two_state_value(p, x, ex);
  };

  const std::size_t starts = static_cast<std::size_t>(std::max(options.two_state_starts, 1));
  std::vector<std::array<double, kTwoStateDim>> points(starts);
  {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(0.0, kPi), logeig(-3.0, 3.0), phase(0.0, 2.0 * kPi);
    for (auto& q : points) q = {angle(rng), logeig(rng), logeig(rng), angle(rng), logeig(rng), logeig(rng), phase(rng)};
  }
  std::vector<double> start_values(starts);
  search::parallel_for(starts, [&](std::size_t i) { start_values[i] = f(points[i]); }, workers(options));

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < starts; ++i) {
    if (std::isfinite(start_values[i]))
      order.push_back(i);
    else
      ++r.coverage.skipped;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return start_values[a] < start_values[b]; });
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(options.two_state_refine, 1)), order.size());
  r.coverage.starts = starts;
  r.coverage.refined = k;

  if (k == 0) {
    r.coverage.evaluations = evals;
    r.warnings.emplace_back("no multistart point lies in the detecting region minx > x_min");
    r.best_value = 0.0;
    r.verdict = Verdict::NotProvable;
    return r;
  }

  std::array<search::Axis, kTwoStateDim> axes{};
  for (std::size_t d : {0u, 3u}) axes[d] = search::Axis{0.0, kPi, true, kPi / 4.0, 9};
  for (std::size_t d : {1u, 2u, 4u, 5u}) axes[d] = search::Axis{-kLogBound, kLogBound, false, 1.0, 9};
  axes[6] = search::Axis{0.0, 2.0 * kPi, true, kPi / 2.0, 9};
  search::DescentOptions dopt;
  dopt.max_iterations = options.max_iterations;
  const std::array<double, kTwoStateDim> scale{0.3, 0.5, 0.5, 0.3, 0.5, 0.5, 0.5};

  std::vector<search::DescentResult> refined(k);
  search::parallel_for(
      k,
      [&](std::size_t s) {
        const auto& q = points[order[s]];
        search::DescentResult d = search::coordinate_descent(f, std::vector<double>(q.begin(), q.end()), axes, dopt);
        const search::DescentResult nm = search::nelder_mead(f, d.point, scale, axes);
        d.evaluations += nm.evaluations;
        if (nm.value < d.value) d.point = nm.point, d.value = nm.value;
        refined[s] = std::move(d);
      },
      workers(options));
  std::size_t best = 0;
  for (std::size_t s = 1; s < k; ++s)
    if (refined[s].value < refined[best].value ||
        (refined[s].value == refined[best].value && refined[s].point < refined[best].point))
      best = s;
  r.coverage.evaluations = evals;

  refined[best].point[6] = best_theta < 0.0 ? best_theta + 2.0 * kPi : best_theta;
  const TwoStatePoint p = decode(refined[best].point);
  try {
    const WitnessOperator w = two_state_witness_at_bound(p.a, p.b, p.theta, options.tol);
    r.best_value = evaluate(w, ex);
    r.best_witness = candidate(w, spec, options);
  } catch (const NotDetectingError& e) {
    r.warnings.emplace_back(e.what());
    r.best_value = refined[best].value;
  }
  r.verdict = verdict_for(r.best_value, options.tol);
  return r;
}

}  // namespace witnesskit
