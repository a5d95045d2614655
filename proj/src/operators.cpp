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

#include "qst/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qst/error.hpp"

namespace qst {
namespace {

using EigenMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_same_dim(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "operator dimensions " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
}

}  // namespace

DenseOperator::DenseOperator(std::size_t dim)
    : dim_(dim), data_(dim * dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw Error(ErrorKind::kInvalidArgument,
                "operator dimension must be a power of two, got " +
                    std::to_string(dim));
  }
}

DenseOperator::DenseOperator(std::size_t dim, std::vector<Complex> entries)
    : DenseOperator(dim) {
  if (entries.size() != dim * dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                "expected " + std::to_string(dim * dim) + " entries");
  }
  data_ = std::move(entries);
}

DenseOperator DenseOperator::identity(std::size_t dim) {
  DenseOperator out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

int DenseOperator::num_sites() const noexcept {
  return dim_ == 0 ? 0 : std::countr_zero(dim_);
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& other) {
  add_scaled(1.0, other);
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& other) {
  add_scaled(-1.0, other);
  return *this;
}

DenseOperator& DenseOperator::operator*=(Complex scalar) {
  kernels::active().scale(data_.size(), scalar, data_.data());
  return *this;
}

void DenseOperator::add_scaled(Complex alpha, const DenseOperator& other) {
  require_same_dim(*this, other);
  kernels::active().axpy(data_.size(), alpha, other.data(), data_.data());
}

DenseOperator operator+(DenseOperator a, const DenseOperator& b) {
  a += b;
  return a;
}

DenseOperator operator-(DenseOperator a, const DenseOperator& b) {
  a -= b;
  return a;
}

DenseOperator operator*(Complex s, DenseOperator a) {
  a *= s;
  return a;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  require_same_dim(a, b);
  DenseOperator out(a.dim());
  kernels::active().gemm(a.dim(), a.data(), b.data(), out.data());
  return out;
}

DenseOperator pauli(PauliKind kind) {
  const Complex i{0.0, 1.0};
  switch (kind) {
    case PauliKind::kX:
      return DenseOperator(2, {0.0, 0.5, 0.5, 0.0});
    case PauliKind::kY:
      return DenseOperator(2, {0.0, -0.5 * i, 0.5 * i, 0.0});
    case PauliKind::kZ:
      return DenseOperator(2, {0.5, 0.0, 0.0, -0.5});
    case PauliKind::kI:
      return DenseOperator(2, {0.5, 0.0, 0.0, 0.5});
    case PauliKind::kRaise:
      return DenseOperator(2, {0.0, 1.0, 0.0, 0.0});
    case PauliKind::kLower:
      return DenseOperator(2, {0.0, 0.0, 1.0, 0.0});
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown Pauli kind");
}

DenseOperator embed(const DenseOperator& op2x2, SiteIndex site, int n_sites) {
  if (op2x2.dim() != 2) {
    throw Error(ErrorKind::kDimensionMismatch, "embed expects a 2x2 operator");
  }
  if (n_sites < 1 || n_sites > 24) {
    throw Error(ErrorKind::kInvalidArgument, "unsupported chain length");
  }
  if (site.value() < 1 || site.value() > n_sites) {
    throw Error(ErrorKind::kSiteOutOfRange,
                "site " + std::to_string(site.value()) + " outside [1, " +
                    std::to_string(n_sites) + "]");
  }
  const std::size_t dim = std::size_t{1} << n_sites;
  const int shift = n_sites - site.value();
  DenseOperator out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t rb = (r >> shift) & 1u;
    for (std::size_t cb = 0; cb < 2; ++cb) {
      const Complex v = op2x2(rb, cb);
      if (v == Complex{}) continue;
      const std::size_t c = (r & ~(std::size_t{1} << shift)) | (cb << shift);
      out(r, c) = v;
    }
  }
  return out;
}

DenseOperator total_operator(PauliKind kind, int n_sites) {
  if (n_sites < 1) {
    throw Error(ErrorKind::kInvalidArgument, "chain needs at least one site");
  }
  const DenseOperator local = pauli(kind);
  DenseOperator out(std::size_t{1} << n_sites);
  for (int j = 1; j <= n_sites; ++j) out += embed(local, SiteIndex(j), n_sites);
  return out;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  DenseOperator out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

DenseOperator dagger(const DenseOperator& a) {
  DenseOperator out(a.dim());
  const std::size_t n = a.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  return a * b - b * a;
}

Complex trace(const DenseOperator& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

Complex trace_product(const DenseOperator& a, const DenseOperator& b) {
  require_same_dim(a, b);
  Complex t{};
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  return t;
}

double hermiticity_defect(const DenseOperator& a) {
  double worst = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c)
      worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
  return worst;
}

bool is_hermitian(const DenseOperator& a, double tol) {
  return hermiticity_defect(a) < tol;
}

DenseOperator hermitize(const DenseOperator& a) {
  DenseOperator out(a.dim());
  const std::size_t n = a.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
  return out;
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  require_same_dim(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

double max_abs(const DenseOperator& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i]));
  return worst;
}

DenseOperator partial_trace_trailing(const DenseOperator& a, int keep_sites) {
  const int n = a.num_sites();
  if (keep_sites < 1 || keep_sites > n) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot keep " + std::to_string(keep_sites) + " of " +
                    std::to_string(n) + " sites");
  }
  const std::size_t kept = std::size_t{1} << keep_sites;
  const std::size_t traced = a.dim() / kept;
  DenseOperator out(kept);
  for (std::size_t r = 0; r < traced; ++r)
    for (std::size_t i = 0; i < kept; ++i)
      for (std::size_t j = 0; j < kept; ++j)
        out(i, j) += a(r * kept + i, r * kept + j);
  return out;
}

StateVector apply(const DenseOperator& a, std::span<const Complex> v) {
  if (v.size() != a.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "vector length mismatch");
  }
  StateVector out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < a.dim(); ++c) acc += a(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "vector length mismatch");
  }
  return kernels::active().dotc(a.size(), a.data(), b.data());
}

double norm(std::span<const Complex> v) {
  return std::sqrt(std::real(inner(v, v)));
}

DenseOperator outer(std::span<const Complex> ket,
                    std::span<const Complex> bra) {
  if (ket.size() != bra.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "vector length mismatch");
  }
  DenseOperator out(ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c)
      out(r, c) = ket[r] * std::conj(bra[c]);
  return out;
}

std::size_t basis_index(std::string_view bits) {
  std::size_t index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') {
      throw Error(ErrorKind::kInvalidArgument,
                  "basis label must contain only 0 and 1");
    }
    index = (index << 1) | static_cast<std::size_t>(b == '1');
  }
  return index;
}

StateVector basis_state(std::string_view bits) {
  if (bits.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty basis label");
  }
  StateVector v(std::size_t{1} << bits.size());
  v[basis_index(bits)] = 1.0;
  return v;
}

std::size_t mirror_index(std::size_t index, int n_sites) {
  std::size_t out = 0;
  for (int k = 0; k < n_sites; ++k) {
    out = (out << 1) | ((index >> k) & 1u);
  }
  return out;
}

DenseOperator mirror_permutation(int n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  DenseOperator m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(mirror_index(i, n_sites), i) = 1.0;
  return m;
}

EigenSystem eigh(const DenseOperator& hermitian) {
  const auto n = static_cast<Eigen::Index>(hermitian.dim());
  Eigen::Map<const EigenMatrix> view(hermitian.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(view), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidArgument, "eigendecomposition failed");
  }
  EigenSystem out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + n);
  out.vectors = DenseOperator(hermitian.dim());
  Eigen::Map<EigenMatrix>(out.vectors.data(), n, n) = solver.eigenvectors();
  return out;
}

double min_eigenvalue(const DenseOperator& hermitian) {
  const auto n = static_cast<Eigen::Index>(hermitian.dim());
  Eigen::Map<const EigenMatrix> view(hermitian.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(view), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace qst
