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

#include "witnesskit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "witnesskit/error.hpp"

namespace witnesskit {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {
  if (dim == 0) throw DimensionError("ComplexMatrix: dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("ComplexMatrix: rows must be square");
    std::size_t c = 0;
    for (const auto& v : row) (*this)(r, c++) = v;
    ++r;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  if (v.size() != w.size()) throw DimensionError("outer: vector sizes differ");
  ComplexMatrix m(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < w.size(); ++c) m(r, c) = v[r] * std::conj(w[c]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(*this);
  for (auto& v : m.data_) v = std::conj(v);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_real(double tol) const {
  return std::all_of(data_.begin(), data_.end(), [tol](const Complex& v) { return std::abs(v.imag()) <= tol; });
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) throw DimensionError("max_abs_diff: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - other.data_[i]));
  return d;
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) throw DimensionError("apply: vector size mismatch");
  ComplexVector out(dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw DimensionError("operator+: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw DimensionError("operator-: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("operator*: dimension mismatch");
  const std::size_t n = a.dim_;
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix by_index(int k) {
  switch (k) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw InvalidArgument("pauli index must be 0..3, got " + std::to_string(k));
  }
}
}  // namespace pauli

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix m(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) m(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return m;
}

ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) v[i * b.size() + k] = a[i] * b[k];
  return v;
}

namespace {

void check_split(const ComplexMatrix& m, DimSplit split, const char* who) {
  if (split.dim_a == 0 || split.dim_b == 0 || split.total() != m.dim())
    throw DimensionError(std::string(who) + ": split " + std::to_string(split.dim_a) + "x" +
                         std::to_string(split.dim_b) + " does not match dimension " + std::to_string(m.dim()));
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& m, DimSplit split, Subsystem subsystem) {
  check_split(m, split, "partial_transpose");
  if (subsystem == Subsystem::Both) return m.transpose();
  const std::size_t da = split.dim_a, db = split.dim_b;
  ComplexMatrix out(m.dim());
  // element <i k| m |j l> with i,j on A and k,l on B
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          const Complex v = m(i * db + k, j * db + l);
          if (subsystem == Subsystem::A)
            out(j * db + k, i * db + l) = v;
          else
            out(i * db + l, j * db + k) = v;
        }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, DimSplit split, Subsystem traced) {
  check_split(m, split, "partial_trace");
  const std::size_t da = split.dim_a, db = split.dim_b;
  if (traced == Subsystem::Both) throw InvalidArgument("partial_trace: traced subsystem must be A or B");
  if (traced == Subsystem::B) {
    ComplexMatrix out(da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out(db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l)
      for (std::size_t i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  if (!m.all_finite()) throw NumericError("hermitian_eig: non-finite entries");
  if (!m.is_hermitian(tol.hermitian)) throw InvalidArgument("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = m.dim();
  // Symmetrize exactly so rounding in the input cannot leak into the result.
  ComplexMatrix a = m;
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = v;
      a(c, r) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() >= tol.jacobi_offdiag * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex u = apq / mag;  // apq = |apq| u
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = D P with D = diag(1, conj(u)) on (p, q) and P the real rotation.
        const Complex jpp = c, jpq = s, jqp = -s * std::conj(u), jqq = c * std::conj(u);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
  }
  if (off_norm() >= tol.jacobi_offdiag * scale) throw NumericError("hermitian_eig: Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum spec;
  spec.eigenvalues.reserve(n);
  spec.eigenvectors.reserve(n);
  for (std::size_t idx : order) {
    spec.eigenvalues.push_back(a(idx, idx).real());
    ComplexVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
    spec.eigenvectors.push_back(normalized(col));
  }
  return spec;
}

double min_eigenvalue(const ComplexMatrix& m, const Tolerances& tol) { return hermitian_eig(m, tol).eigenvalues.front(); }

bool is_nonpositive(const ComplexMatrix& m, const Tolerances& tol) { return min_eigenvalue(m, tol) < -tol.zero; }

std::vector<double> real_pseudo_inverse(std::span<const double> m, std::size_t rows, std::size_t cols,
                                        double rel_cutoff) {
  if (m.size() != rows * cols) throw DimensionError("real_pseudo_inverse: size mismatch");
  // pinv(M) = M^T (M M^T)^+, with the Gram inverse taken on its spectrum.
  ComplexMatrix gram(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < cols; ++k) s += m[i * cols + k] * m[j * cols + k];
      gram(i, j) = s;
    }
  const HermitianSpectrum sp = hermitian_eig(gram);
  const double largest = std::max(std::abs(sp.eigenvalues.front()), std::abs(sp.eigenvalues.back()));
  ComplexMatrix ginv(rows);
  for (std::size_t e = 0; e < rows; ++e) {
    const double lam = sp.eigenvalues[e];
    if (lam <= rel_cutoff * largest) continue;
    ginv += ComplexMatrix::projector(sp.eigenvectors[e]) * Complex{1.0 / lam};
  }
  std::vector<double> out(cols * rows, 0.0);  // cols x rows
  for (std::size_t k = 0; k < cols; ++k)
    for (std::size_t j = 0; j < rows; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i) s += m[i * cols + k] * ginv(i, j).real();
      out[k * rows + j] = s;
    }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner: vector sizes differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

ComplexVector normalized(std::span<const Complex> v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw NumericError("normalized: zero vector");
  ComplexVector out(v.begin(), v.end());
  for (auto& x : out) x /= n;
  return out;
}

std::vector<double> realify(std::span<const Complex> v) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  const Complex phase = std::abs(v[pivot]) > 0 ? std::conj(v[pivot]) / std::abs(v[pivot]) : Complex{1.0};
  std::vector<double> out(v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (v[i] * phase).real();
    s += out[i] * out[i];
  }
  s = std::sqrt(s);
  for (auto& x : out) x /= s;
  return out;
}

}  // namespace witnesskit
