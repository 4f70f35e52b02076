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

#include "witnesskit/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "witnesskit/error.hpp"
#include "witnesskit/search.hpp"

namespace witnesskit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr char kPauliName[] = "0xyz";

const std::array<ComplexMatrix, 16>& pauli_products() {
  static const std::array<ComplexMatrix, 16> table = [] {
    std::array<ComplexMatrix, 16> t;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[4 * i + j] = tensor_product(pauli::by_index(i), pauli::by_index(j));
    return t;
  }();
  return table;
}

// Quadratic form of a real symmetric 2x2 operator at Bloch vector (nx, nz);
// the y component never enters.
struct BlochForm {
  double c0, cz, cx;
  explicit BlochForm(const RealSymmetric2& m) : c0(0.5 * m.trace()), cz(0.5 * (m.xx - m.yy)), cx(m.xy) {}
  double operator()(double nx, double nz) const { return c0 + cz * nz + cx * nx; }
};

double product_at(const BlochForm& fa, const BlochForm& fb, double nx, double nz) {
  return std::max(0.0, fa(nx, nz) * fb(nx, nz));
}

}  // namespace

std::string to_string(WitnessFamily family) {
  switch (family) {
    case WitnessFamily::Oew: return "oew";
    case WitnessFamily::OewEb4: return "oew_eb4";
    case WitnessFamily::W2: return "w2";
    case WitnessFamily::Custom: return "custom";
  }
  return "custom";
}

double entanglement_condition(const FourStateParams& p) {
  return std::sin(p.phi) * std::sin(p.psi) *
         (std::sin(p.phi) * std::cos(p.psi) * std::cos(p.theta) - std::cos(p.phi) * std::sin(p.theta));
}

bool RealSymmetric2::positive_semidefinite(double tol) const {
  const double half = 0.5 * (xx - yy);
  return 0.5 * trace() - std::sqrt(half * half + xy * xy) >= -tol;
}

WitnessOperator oew_two_qubit(const PureState& phi_e, const Tolerances& tol) {
  if (phi_e.split() != kTwoQubits) throw DimensionError("oew_two_qubit: two-qubit state required");
  if (schmidt_decompose(phi_e, tol).coefficients.size() < 2)
    throw InvalidArgument("oew_two_qubit: state is a product state");
  WitnessOperator w;
  w.matrix = partial_transpose(phi_e.projector(), kTwoQubits, Subsystem::B);
  w.family = WitnessFamily::Oew;
  w.params = phi_e.amplitudes();
  return w;
}

PureState real_entangled_state(const FourStateParams& p) {
  const double sp = std::sin(p.phi), ss = std::sin(p.psi);
  ComplexVector v{std::cos(p.phi), sp * std::cos(p.psi), sp * ss * std::cos(p.theta), sp * ss * std::sin(p.theta)};
  return PureState::from_unnormalized(std::move(v), kTwoQubits);
}

FourStateParams four_state_params(std::span<const Complex> v) {
  if (v.size() != 4) throw DimensionError("four_state_params: four amplitudes required");
  const double n = norm(v);
  if (!(n > 0.0)) throw InvalidArgument("four_state_params: zero vector");
  std::array<double, 4> r{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(v[k].imag()) > 1e-12 * n) throw InvalidArgument("four_state_params: amplitudes must be real");
    r[k] = v[k].real() / n;
  }
  auto wrap = [](double a) { return a < 0.0 ? a + 2.0 * kPi : a; };
  FourStateParams p;
  p.phi = wrap(std::atan2(std::sqrt(r[1] * r[1] + r[2] * r[2] + r[3] * r[3]), r[0]));
  p.psi = wrap(std::atan2(std::sqrt(r[2] * r[2] + r[3] * r[3]), r[1]));
  p.theta = wrap(std::atan2(r[3], r[2]));
  return p;
}

WitnessOperator oew_eb4(const FourStateParams& p, const Tolerances& tol) {
  const ComplexMatrix q = real_entangled_state(p).projector();
  WitnessOperator w;
  w.matrix = (q + partial_transpose(q, kTwoQubits, Subsystem::B)) * Complex{0.5};
  w.family = WitnessFamily::OewEb4;
  w.params = p;
  w.trivial = std::abs(entanglement_condition(p)) <= tol.entangled || min_eigenvalue(w.matrix, tol) >= -tol.zero;
  return w;
}

WitnessOperator oew_eb4_from_eigenvector(const ComplexMatrix& rho, const Tolerances& tol) {
  if (rho.dim() != 4) throw DimensionError("oew_eb4_from_eigenvector: two-qubit operator required");
  if (!rho.is_real(tol.hermitian)) throw InvalidArgument("oew_eb4_from_eigenvector: operator must be real");
  const HermitianSpectrum sp = hermitian_eig(partial_transpose(rho, kTwoQubits, Subsystem::B), tol);
  if (sp.eigenvalues.front() >= -tol.zero)
    throw InvalidArgument("oew_eb4_from_eigenvector: partial transpose has no negative eigenvalue");
  const std::vector<double> r = realify(sp.eigenvectors.front());
  const ComplexVector v(r.begin(), r.end());
  return oew_eb4(four_state_params(v), tol);
}

ComplexMatrix omega_four(const DensityOperator& rho) {
  if (rho.split() != kTwoQubits) throw DimensionError("omega_four: two-qubit state required");
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = m + partial_transpose(m, kTwoQubits, Subsystem::A);
  out += partial_transpose(m, kTwoQubits, Subsystem::B);
  out += m.transpose();
  return out * Complex{0.25};
}

ComplexMatrix omega_half(const DensityOperator& rho) {
  if (rho.split().dim_a != 2) throw DimensionError("omega_half: Alice must hold a qubit");
  const ComplexMatrix& m = rho.matrix();
  return (m + partial_transpose(m, rho.split(), Subsystem::A)) * Complex{0.5};
}

double minx(const RealSymmetric2& a, const RealSymmetric2& b) {
  const BlochForm fa(a), fb(b);
  // Bloch angles: nz = cos t, nx = sin t cos f.
  auto obj = [&](double t, double f) { return product_at(fa, fb, std::sin(t) * std::cos(f), std::cos(t)); };

  constexpr int kGrid = 64;
  const double dt = kPi / (kGrid - 1), df = 2.0 * kPi / kGrid;
  std::vector<double> grid(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) grid[i * kGrid + j] = obj(i * dt, j * df);

  // Seeds: discrete local minima (with wrap in f), best first.
  std::vector<std::pair<double, int>> seeds;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double v = grid[i * kGrid + j];
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di;
          if (ii < 0 || ii >= kGrid) continue;
          const int jj = (j + dj + kGrid) % kGrid;
          if (grid[ii * kGrid + jj] < v) {
            local = false;
            break;
          }
        }
      if (local) seeds.emplace_back(v, i * kGrid + j);
    }
  std::sort(seeds.begin(), seeds.end());
  if (seeds.size() > 4) seeds.resize(4);

  const std::array<search::Axis, 2> axes{search::Axis{0.0, kPi, false, 2.0 * dt, 5},
                                         search::Axis{0.0, 2.0 * kPi, true, 2.0 * df, 5}};
  search::DescentOptions opt;
  opt.xtol = 1e-12;
  opt.ftol = 1e-15;
  double best = *std::min_element(grid.begin(), grid.end());
  for (const auto& [v, idx] : seeds) {
    const auto r = search::coordinate_descent([&](std::span<const double> x) { return obj(x[0], x[1]); },
                                              {(idx / kGrid) * dt, (idx % kGrid) * df}, axes, opt);
    best = std::min(best, r.value);
  }
  return std::sqrt(best);
}

double minx_real(const RealSymmetric2& a, const RealSymmetric2& b) {
  const BlochForm fa(a), fb(b);
  auto obj = [&](double t) { return product_at(fa, fb, std::sin(t), std::cos(t)); };
  constexpr int kSamples = 64;
  const double h = 2.0 * kPi / kSamples;
  std::array<double, kSamples> v{};
  for (int i = 0; i < kSamples; ++i) v[i] = obj(i * h);
  double best = *std::min_element(v.begin(), v.end());
  for (int i = 0; i < kSamples; ++i) {
    const double prev = v[(i + kSamples - 1) % kSamples], next = v[(i + 1) % kSamples];
    if (v[i] > prev || v[i] > next) continue;
    best = std::min(best, search::golden_section(obj, (i - 1) * h, (i + 1) * h, 1e-12).value);
  }
  return std::sqrt(best);
}

double x_min(const RealSymmetric2& a, const RealSymmetric2& b) {
  if (!a.positive_definite() || !b.positive_definite())
    throw InvalidArgument("x_min: A and B must be positive definite");
  const double alpha = a.xx * b.xx + 2.0 * a.xy * b.xy + a.yy * b.yy;
  const double dd = a.det() * b.det();
  const double disc = std::sqrt(std::max(0.0, alpha * alpha / 4.0 - dd));
  // alpha/2 - disc rewritten without cancellation.
  return std::sqrt(dd / (alpha / 2.0 + disc));
}

ComplexMatrix c_theta(double theta) {
  const Complex e = std::polar(1.0, theta);
  ComplexMatrix c(4);
  c(0, 2) = e;
  c(1, 3) = e;
  c(2, 0) = std::conj(e);
  c(3, 1) = std::conj(e);
  return c;
}

ComplexMatrix two_state_operator(const RealSymmetric2& a, const RealSymmetric2& b, double theta, double x) {
  ComplexMatrix w = c_theta(theta) * Complex{x};
  w(0, 0) = a.xx;
  w(0, 1) = a.xy;
  w(1, 0) = a.xy;
  w(1, 1) = a.yy;
  w(2, 2) = b.xx;
  w(2, 3) = b.xy;
  w(3, 2) = b.xy;
  w(3, 3) = b.yy;
  return w;
}

WitnessOperator two_state_witness(const TwoStateParams& p, const Tolerances& tol) {
  if (!p.a_op.positive_definite() || !p.b_op.positive_definite())
    throw InvalidArgument("two_state_witness: A and B must be positive definite");
  if (!(p.x >= 0.0) || !std::isfinite(p.theta)) throw InvalidArgument("two_state_witness: need x >= 0, finite theta");
  const double bound = minx(p.a_op, p.b_op);
  if (p.x > bound + tol.zero) {
    std::ostringstream os;
    os.precision(12);
    os << "two_state_witness: x = " << p.x << " exceeds minx(A, B) = " << bound;
    throw InvalidArgument(os.str());
  }
  const double lower = x_min(p.a_op, p.b_op);
  if (p.x <= lower + tol.zero) {
    std::ostringstream os;
    os.precision(12);
    os << "two_state_witness: x = " << p.x << " does not exceed x_min = " << lower << "; operator is PSD";
    throw NotDetectingError(os.str());
  }
  WitnessOperator w;
  w.matrix = two_state_operator(p.a_op, p.b_op, p.theta, p.x);
  w.family = WitnessFamily::W2;
  w.params = p;
  return w;
}

WitnessOperator two_state_witness_at_bound(const RealSymmetric2& a, const RealSymmetric2& b, double theta,
                                           const Tolerances& tol) {
  if (!a.positive_definite() || !b.positive_definite())
    throw InvalidArgument("two_state_witness: A and B must be positive definite");
  return two_state_witness(TwoStateParams{a, b, theta, minx(a, b)}, tol);
}

WitnessOperator custom_witness(ComplexMatrix m) {
  if (!m.all_finite()) throw InvalidArgument("custom_witness: non-finite entries");
  if (!m.is_hermitian()) throw InvalidArgument("custom_witness: matrix is not Hermitian");
  WitnessOperator w;
  w.trivial = min_eigenvalue(m) >= -kDefaultTolerances.zero;
  w.matrix = std::move(m);
  w.family = WitnessFamily::Custom;
  return w;
}

PauliCoefficients pauli_decompose(const ComplexMatrix& w) {
  if (w.dim() != 4) throw DimensionError("pauli_decompose: 4 x 4 operator required");
  const auto& table = pauli_products();
  PauliCoefficients c{};
  for (std::size_t k = 0; k < 16; ++k) {
    Complex tr = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t s = 0; s < 4; ++s) tr += table[k](r, s) * w(s, r);
    c[k] = 0.25 * tr.real();
  }
  return c;
}

ComplexMatrix pauli_reconstruct(const PauliCoefficients& c) {
  const auto& table = pauli_products();
  ComplexMatrix m(4);
  for (std::size_t k = 0; k < 16; ++k)
    if (c[k] != 0.0) m += table[k] * Complex{c[k]};
  return m;
}

double PseudoMixture::evaluate(const JointDistribution& dist) const {
  double s = residual;
  for (const auto& [key, c] : coefficients) s += c * dist.at(key.first, key.second);
  return s;
}

namespace {

double support_cutoff(const PauliCoefficients& c) {
  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  return 1e-12 * scale;
}

std::string pair_name(int i, int j) { return std::string("(") + kPauliName[i] + "," + kPauliName[j] + ")"; }

}  // namespace

PseudoMixture pseudo_mixture(const WitnessOperator& w, const ProtocolSpec& spec, const PseudoMixtureOptions& options) {
  const PauliCoefficients c = pauli_decompose(w.matrix);
  const double cutoff = support_cutoff(c);
  const PartyFrame fa = party_frame(spec.alice);
  const PartyFrame fb = party_frame(spec.bob);
  const std::optional<ComplexMatrix>& rho_a = options.fixed_rho_a ? options.fixed_rho_a : spec.fixed_rho_a;
  const bool inject = options.inject_fixed_rho_a && rho_a.has_value();
  if (inject && rho_a->dim() != 2) throw DimensionError("pseudo_mixture: fixed reduced state must be a qubit operator");

  PseudoMixture pm;
  std::vector<double> coeff(fa.size() * fb.size(), 0.0);
  std::string missing;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double cij = c[AccessibleExpectations::index(i, j)];
      if (std::abs(cij) <= cutoff) continue;
      if (fa.accessible[i] && fb.accessible[j]) {
        for (std::size_t a = 0; a < fa.size(); ++a) {
          const double ga = fa.dual_at(a, i);
          if (ga == 0.0) continue;
          for (std::size_t b = 0; b < fb.size(); ++b) coeff[a * fb.size() + b] += cij * ga * fb.dual_at(b, j);
        }
      } else if (j == 0 && inject) {
        const ComplexMatrix sk = pauli::by_index(i);
        double known = 0.0;
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t s = 0; s < 2; ++s) known += ((*rho_a)(r, s) * sk(s, r)).real();
        pm.residual_terms[i] = cij;
        pm.residual += cij * known;
      } else {
        missing += (missing.empty() ? "" : " ") + pair_name(i, j);
      }
    }
  if (!missing.empty())
    throw InaccessibleWitnessError("witness has support outside the " + to_string(spec.name) +
                                   " accessible set: " + missing);
  for (std::size_t a = 0; a < fa.size(); ++a)
    for (std::size_t b = 0; b < fb.size(); ++b) pm.coefficients[{fa.labels[a], fb.labels[b]}] = coeff[a * fb.size() + b];
  return pm;
}

double evaluate(const PauliCoefficients& c, const AccessibleExpectations& ex) {
  const double cutoff = support_cutoff(c);
  double s = 0.0;
  std::string missing;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double cij = c[AccessibleExpectations::index(i, j)];
      if (std::abs(cij) <= cutoff) continue;
      if (!ex.has(i, j)) {
        missing += (missing.empty() ? "" : " ") + pair_name(i, j);
        continue;
      }
      s += cij * ex.at(i, j);
    }
  if (!missing.empty()) throw InaccessibleWitnessError("no expectation available for " + missing);
  return s;
}

double evaluate(const WitnessOperator& w, const AccessibleExpectations& ex) {
  return evaluate(pauli_decompose(w.matrix), ex);
}

}  // namespace witnesskit
