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

// Dense complex linear algebra for small bipartite systems.
//
// Basis convention: computational basis |00>, |01>, |10>, |11> with the A
// factor as the slow index. sigma_y = [[0, -i], [i, 0]].

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "witnesskit/tolerances.hpp"

namespace witnesskit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension. dim must be >= 1.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major construction; every row must have rows.size() entries.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  /// Diagonal matrix with the given real entries.
  static ComplexMatrix diagonal(std::span<const double> entries);
  /// |v><w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);
  /// |v><v|
  static ComplexMatrix projector(std::span<const Complex> v) { return outer(v, v); }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;
  bool is_hermitian(double tol = kDefaultTolerances.hermitian) const;
  /// True when every imaginary part is below tol in magnitude.
  bool is_real(double tol = 0.0) const;
  /// Largest entrywise modulus of (*this - other).
  double max_abs_diff(const ComplexMatrix& other) const;

  ComplexVector apply(std::span<const Complex> v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Bipartite dimension split annotating a matrix or vector on A (x) B.
struct DimSplit {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::size_t total() const { return dim_a * dim_b; }
  friend bool operator==(const DimSplit&, const DimSplit&) = default;
};

inline constexpr DimSplit kTwoQubits{2, 2};

enum class Subsystem { A, B, Both };

/// Real spectrum (ascending) with paired unit eigenvectors.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  std::vector<ComplexVector> eigenvectors;
};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// Index 0..3 maps to {1, x, y, z}.
ComplexMatrix by_index(int k);
}  // namespace pauli

/// Kronecker product, left factor is the slow index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b);

/// T_A, T_B or the full transpose. Throws DimensionError on a split mismatch.
ComplexMatrix partial_transpose(const ComplexMatrix& m, DimSplit split, Subsystem subsystem);

/// Traces out `traced` (A or B) and returns the operator on the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, DimSplit split, Subsystem traced);

/// Cyclic Jacobi diagonalization. Throws InvalidArgument when m is not
/// Hermitian within tol.hermitian, NumericError on non-finite input or
/// failure to converge.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

double min_eigenvalue(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

/// min_eigenvalue(m) < -tol.zero
bool is_nonpositive(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

/// Moore-Penrose pseudo-inverse of a real rows x cols matrix stored row-major.
/// Singular values below rel_cutoff * largest are dropped.
std::vector<double> real_pseudo_inverse(std::span<const double> m, std::size_t rows, std::size_t cols,
                                        double rel_cutoff = 1e-12);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);
ComplexVector normalized(std::span<const Complex> v);

/// Re-phases an eigenvector of a real symmetric matrix so it is real, then
/// drops the (vanishing) imaginary parts and renormalizes.
std::vector<double> realify(std::span<const Complex> v);

}  // namespace witnesskit
