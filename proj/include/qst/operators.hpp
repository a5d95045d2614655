// Copyright 2026 The qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qst/kernels.hpp"

namespace qst {

using StateVector = std::vector<Complex>;

/* Square complex matrix on the 2^N chain space, stored row-major.

Basis ordering: |b_1 b_2 ... b_N> has index sum_i b_i 2^(N-i), so site 1 is
the most significant bit and site N the least significant one. Every other
module relies on this ordering. */
class DenseOperator {
 public:
  DenseOperator() = default;
  // Zero matrix. dim must be a power of two.
  explicit DenseOperator(std::size_t dim);
  DenseOperator(std::size_t dim, std::vector<Complex> entries);

  static DenseOperator identity(std::size_t dim);
  static DenseOperator zero_like(const DenseOperator& other) {
    return DenseOperator(other.dim());
  }

  std::size_t dim() const noexcept { return dim_; }
  // log2(dim).
  int num_sites() const noexcept;
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * dim_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }

  std::span<Complex> row(std::size_t r) {
    return {data_.data() + r * dim_, dim_};
  }
  std::span<const Complex> row(std::size_t r) const {
    return {data_.data() + r * dim_, dim_};
  }

  Complex* data() noexcept { return data_.data(); }
  const Complex* data() const noexcept { return data_.data(); }
  std::size_t size() const noexcept { return data_.size(); }

  DenseOperator& operator+=(const DenseOperator& other);
  DenseOperator& operator-=(const DenseOperator& other);
  DenseOperator& operator*=(Complex scalar);

  // this += alpha * other
  void add_scaled(Complex alpha, const DenseOperator& other);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

DenseOperator operator+(DenseOperator a, const DenseOperator& b);
DenseOperator operator-(DenseOperator a, const DenseOperator& b);
DenseOperator operator*(Complex s, DenseOperator a);
DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);

// One-based site index into a chain.
class SiteIndex {
 public:
  explicit constexpr SiteIndex(int value) : value_(value) {}
  constexpr int value() const noexcept { return value_; }

 private:
  int value_;
};

enum class PauliKind { kX, kY, kZ, kI, kRaise, kLower };

// Half-normalized single-spin operators: X = sigma_x / 2, Y = sigma_y / 2,
// Z = sigma_z / 2, I = identity / 2, S+ = X + iY = |0><1|, S- = X - iY.
DenseOperator pauli(PauliKind kind);

// identity (x) ... (x) op (x) ... (x) identity with op on `site`. The
// identity slots hold the bare identity, not the half-normalized I.
DenseOperator embed(const DenseOperator& op2x2, SiteIndex site, int n_sites);

// sum_j embed(pauli(kind), j, n_sites).
DenseOperator total_operator(PauliKind kind, int n_sites);

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseOperator dagger(const DenseOperator& a);
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);
Complex trace(const DenseOperator& a);
// Tr(A B) without forming the product.
Complex trace_product(const DenseOperator& a, const DenseOperator& b);

// max |M - M^dagger| over entries.
double hermiticity_defect(const DenseOperator& a);
bool is_hermitian(const DenseOperator& a, double tol = 1e-12);
DenseOperator hermitize(const DenseOperator& a);
double max_abs_diff(const DenseOperator& a, const DenseOperator& b);
double max_abs(const DenseOperator& a);

// Reduces onto the last `keep_sites` sites of the chain, tracing out the
// leading ones.
DenseOperator partial_trace_trailing(const DenseOperator& a, int keep_sites);

StateVector apply(const DenseOperator& a, std::span<const Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);
DenseOperator outer(std::span<const Complex> ket, std::span<const Complex> bra);

// |b_1 ... b_N> from a bit string such as "0110".
StateVector basis_state(std::string_view bits);
std::size_t basis_index(std::string_view bits);

// Site-reversal permutation M with M|b_1 ... b_N> = |b_N ... b_1>.
DenseOperator mirror_permutation(int n_sites);
std::size_t mirror_index(std::size_t index, int n_sites);

struct EigenSystem {
  std::vector<double> values;  // ascending
  DenseOperator vectors;       // column k is the eigenvector of values[k]
};

// Spectral decomposition of a Hermitian matrix (Eigen-backed).
EigenSystem eigh(const DenseOperator& hermitian);
double min_eigenvalue(const DenseOperator& hermitian);

}  // namespace qst
