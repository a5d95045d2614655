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

#include "qst/kernels.hpp"

#include <algorithm>

namespace qst::kernels {
namespace {

// Written out on (re, im) parts so the compiler does not route through the
// NaN-checking __muldc3 path.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void axpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void add_scaled(std::size_t n, const Complex* x, Complex alpha,
                const Complex* y, Complex* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + mul(alpha, y[i]);
}

void scale(std::size_t n, Complex alpha, Complex* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] = mul(alpha, x[i]);
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void gemm(std::size_t dim, const Complex* a, const Complex* b, Complex* c) {
  std::fill(c, c + dim * dim, Complex{});
  for (std::size_t i = 0; i < dim; ++i) {
    Complex* ci = c + i * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex aik = a[i * dim + k];
      if (aik == Complex{}) continue;
      axpy(dim, aik, b + k * dim, ci);
    }
  }
}

void csr_multiply(std::size_t rows, const std::uint32_t* row_start,
                  const std::uint32_t* columns, const Complex* values,
                  const Complex* x, Complex* y, bool accumulate) {
  for (std::size_t r = 0; r < rows; ++r) {
    Complex total{};
    for (std::uint32_t e = row_start[r]; e < row_start[r + 1]; ++e)
      total += mul(values[e], x[columns[e]]);
    y[r] = accumulate ? y[r] + total : total;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, &axpy, &add_scaled, &scale,
                                 &dotc, &gemm, &csr_multiply};
  return table;
}

}  // namespace qst::kernels
