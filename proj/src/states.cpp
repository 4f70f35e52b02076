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

#include "witnesskit/states.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "witnesskit/error.hpp"

namespace witnesskit {

PureState::PureState(ComplexVector amplitudes, DimSplit split) : amplitudes_(std::move(amplitudes)), split_(split) {
  if (split_.total() != amplitudes_.size())
    throw DimensionError("PureState: split does not match amplitude count");
  if (std::abs(norm(amplitudes_) - 1.0) > 1e-10) throw InvalidArgument("PureState: amplitudes are not unit norm");
}

PureState PureState::single(ComplexVector amplitudes) {
  const std::size_t n = amplitudes.size();
  return PureState(std::move(amplitudes), DimSplit{1, n});
}

PureState PureState::from_unnormalized(ComplexVector amplitudes, DimSplit split) {
  return PureState(normalized(amplitudes), split);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, DimSplit split, const Tolerances& tol)
    : matrix_(std::move(matrix)), split_(split) {
  if (split_.total() != matrix_.dim()) throw DimensionError("DensityOperator: split does not match dimension");
  if (!matrix_.is_hermitian(tol.hermitian)) throw InvalidArgument("DensityOperator: matrix is not Hermitian");
  if (std::abs(matrix_.trace() - 1.0) > 1e-10) throw InvalidArgument("DensityOperator: trace is not 1");
  if (min_eigenvalue(matrix_, tol) < -tol.zero) throw InvalidArgument("DensityOperator: matrix is not PSD");
}

DensityOperator DensityOperator::from_pure(const PureState& psi) { return {psi.projector(), psi.split()}; }

DensityOperator DensityOperator::reduced_a() const {
  const ComplexMatrix m = partial_trace(matrix_, split_, Subsystem::B);
  return {m, DimSplit{1, m.dim()}};
}

DensityOperator DensityOperator::reduced_b() const {
  const ComplexMatrix m = partial_trace(matrix_, split_, Subsystem::A);
  return {m, DimSplit{1, m.dim()}};
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  if (coefficients.empty()) return {};
  ComplexVector out(left_basis.front().size() * right_basis.front().size(), 0.0);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const ComplexVector term = tensor_product(left_basis[k], right_basis[k]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coefficients[k] * term[i];
  }
  return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, const Tolerances& tol) {
  const std::size_t da = psi.split().dim_a, db = psi.split().dim_b;
  const ComplexVector& amp = psi.amplitudes();
  const ComplexMatrix rho_a = partial_trace(psi.projector(), psi.split(), Subsystem::B);
  const HermitianSpectrum sp = hermitian_eig(rho_a, tol);

  SchmidtDecomposition out;
  // Descending order; v_k = (<u_k| (x) 1)|psi>, c_k = |v_k|.
  for (std::size_t e = da; e-- > 0;) {
    const ComplexVector& u = sp.eigenvectors[e];
    ComplexVector v(db, 0.0);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) v[j] += std::conj(u[i]) * amp[i * db + j];
    const double c = norm(v);
    if (c <= 1e-10) continue;
    for (auto& x : v) x /= c;
    out.coefficients.push_back(c);
    out.left_basis.push_back(u);
    out.right_basis.push_back(std::move(v));
  }
  return out;
}

bool is_ppt(const DensityOperator& rho, const Tolerances& tol) {
  return min_eigenvalue(partial_transpose(rho.matrix(), rho.split(), Subsystem::A), tol) >= -tol.zero;
}

namespace named {
namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}
PureState ket0() { return PureState::single({1.0, 0.0}); }
PureState ket1() { return PureState::single({0.0, 1.0}); }
PureState ket_plus() { return PureState::single({kInvSqrt2, kInvSqrt2}); }
PureState ket_minus() { return PureState::single({kInvSqrt2, -kInvSqrt2}); }
PureState phi_plus() { return PureState({kInvSqrt2, 0.0, 0.0, kInvSqrt2}, kTwoQubits); }
PureState psi_minus() { return PureState({0.0, kInvSqrt2, -kInvSqrt2, 0.0}, kTwoQubits); }
DensityOperator maximally_mixed(DimSplit split) {
  return {ComplexMatrix::identity(split.total()) * Complex{1.0 / static_cast<double>(split.total())}, split};
}
}  // namespace named

DensityOperator werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("werner_state: p must lie in [0, 1]");
  ComplexMatrix m = named::psi_minus().projector() * Complex{p};
  m += ComplexMatrix::identity(4) * Complex{(1.0 - p) / 4.0};
  return {m, kTwoQubits};
}

PureState pm_source_state(std::span<const PureState> signals, std::span<const double> probs) {
  if (signals.empty()) throw InvalidArgument("pm_source_state: no signals");
  if (signals.size() != probs.size()) throw InvalidArgument("pm_source_state: one probability per signal required");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InvalidArgument("pm_source_state: probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("pm_source_state: probabilities do not sum to 1");
  const std::size_t na = signals.size(), nb = signals.front().dim();
  ComplexVector amp(na * nb, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    if (signals[i].dim() != nb) throw DimensionError("pm_source_state: signals differ in dimension");
    const double w = std::sqrt(probs[i]);
    for (std::size_t j = 0; j < nb; ++j) amp[i * nb + j] = w * signals[i].amplitudes()[j];
  }
  return PureState::from_unnormalized(std::move(amp), DimSplit{na, nb});
}

DensityOperator apply_channel_to_b(const DensityOperator& rho, std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw InvalidArgument("apply_channel_to_b: empty Kraus set");
  const DimSplit split = rho.split();
  const ComplexMatrix id_a = ComplexMatrix::identity(split.dim_a);
  ComplexMatrix out(rho.dim());
  for (const auto& k : kraus) {
    if (k.dim() != split.dim_b) throw DimensionError("apply_channel_to_b: Kraus operator does not act on B");
    const ComplexMatrix big = tensor_product(id_a, k);
    out += big * rho.matrix() * big.adjoint();
  }
  return {out, split};
}

DensityOperator apply_channel_to_b(const PureState& psi, std::span<const ComplexMatrix> kraus) {
  return apply_channel_to_b(DensityOperator::from_pure(psi), kraus);
}

namespace sampling {
namespace {

ComplexVector gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (auto& x : v) x = Complex{g(rng), g(rng)};
  return v;
}

}  // namespace

PureState random_pure_state(DimSplit split, std::mt19937_64& rng) {
  return PureState::from_unnormalized(gaussian_vector(split.total(), rng), split);
}

DensityOperator random_density(DimSplit split, std::mt19937_64& rng, std::size_t rank) {
  const std::size_t n = split.total();
  if (rank == 0 || rank > n) rank = n;
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < rank; ++r) m += ComplexMatrix::projector(gaussian_vector(n, rng));
  m *= Complex{1.0 / m.trace().real()};
  return {m, split};
}

DensityOperator random_separable(DimSplit split, std::mt19937_64& rng, std::size_t terms) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> w(terms);
  for (auto& x : w) x = gamma(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  ComplexMatrix m(split.total());
  for (std::size_t t = 0; t < terms; ++t) {
    const ComplexVector a = normalized(gaussian_vector(split.dim_a, rng));
    const ComplexVector b = normalized(gaussian_vector(split.dim_b, rng));
    m += ComplexMatrix::projector(tensor_product(a, b)) * Complex{w[t] / total};
  }
  m *= Complex{1.0 / m.trace().real()};
  return {m, split};
}

std::vector<ComplexMatrix> random_kraus(std::size_t dim, std::size_t count, std::mt19937_64& rng) {
  if (count == 0) throw InvalidArgument("random_kraus: count must be >= 1");
  // Columns of a (count*dim) x dim isometry via Gram-Schmidt.
  const std::size_t rows = count * dim;
  std::vector<ComplexVector> cols;
  for (std::size_t c = 0; c < dim; ++c) {
    ComplexVector v = gaussian_vector(rows, rng);
    for (const auto& prev : cols) {
      const Complex proj = inner(prev, v);
      for (std::size_t i = 0; i < rows; ++i) v[i] -= proj * prev[i];
    }
    cols.push_back(normalized(v));
  }
  std::vector<ComplexMatrix> kraus(count, ComplexMatrix(dim));
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) kraus[k](r, c) = cols[c][k * dim + r];
  return kraus;
}

}  // namespace sampling

}  // namespace witnesskit
