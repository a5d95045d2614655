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

// This translation unit is compiled with -mavx2 -mfma. Nothing in here may be
// called before cpu_supports_avx2() has returned true.

#include "qst/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

#include <algorithm>

namespace qst::kernels {
namespace {

/* A 256-bit register holds two complex doubles <re0 im0 re1 im1>.

Complex product alpha * <x> with alpha = (ar, ai):
  <x>  * <ar ar ar ar>          = <re*ar  im*ar  ...>
  <x'> * <ai ai ai ai>          = <im*ai  re*ai  ...>   (x' swaps re/im)
  fmaddsub subtracts in even lanes and adds in odd lanes, giving
                                  <re*ar - im*ai, im*ar + re*ai>. */
inline __m256d cmul(__m256d x, __m256d ar, __m256d ai) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(x, ar, _mm256_mul_pd(swapped, ai));
}

inline const double* raw(const Complex* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* raw(Complex* p) { return reinterpret_cast<double*>(p); }

inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void axpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xs = raw(x);
  double* ys = raw(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xs + 2 * i + 4);
    const __m256d y0 = _mm256_loadu_pd(ys + 2 * i);
    const __m256d y1 = _mm256_loadu_pd(ys + 2 * i + 4);
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(y0, cmul(x0, ar, ai)));
    _mm256_storeu_pd(ys + 2 * i + 4, _mm256_add_pd(y1, cmul(x1, ar, ai)));
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(y0, cmul(x0, ar, ai)));
  }
  for (; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void add_scaled(std::size_t n, const Complex* x, Complex alpha,
                const Complex* y, Complex* out) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xs = raw(x);
  const double* ys = raw(y);
  double* os = raw(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(os + 2 * i, _mm256_add_pd(x0, cmul(y0, ar, ai)));
  }
  for (; i < n; ++i) out[i] = x[i] + mul(alpha, y[i]);
}

void scale(std::size_t n, Complex alpha, Complex* x) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  double* xs = raw(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    _mm256_storeu_pd(xs + 2 * i, cmul(x0, ar, ai));
  }
  for (; i < n; ++i) x[i] = mul(alpha, x[i]);
}

// conj(x) * y summed: re += xr*yr + xi*yi, im += xr*yi - xi*yr.
// Accumulate <xr*yr, xr*yi> and <xi*yi, xi*yr> lanes separately and combine
// once at the end.
Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  const double* xs = raw(x);
  const double* ys = raw(y);
  __m256d acc_direct = _mm256_setzero_pd();   // <xr*yr, xi*yi, ...>
  __m256d acc_crossed = _mm256_setzero_pd();  // <xr*yi, xi*yr, ...>
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(ys + 2 * i);
    acc_direct = _mm256_fmadd_pd(x0, y0, acc_direct);
    acc_crossed =
        _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), acc_crossed);
  }
  alignas(32) double d[4];
  alignas(32) double c[4];
  _mm256_store_pd(d, acc_direct);
  _mm256_store_pd(c, acc_crossed);
  double re = (d[0] + d[1]) + (d[2] + d[3]);
  double im = (c[0] - c[1]) + (c[2] - c[3]);
  for (; i < n; ++i) {
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

// Two stored entries per iteration: the gathered x values share a register,
// the matching values are already adjacent. The lane pair is folded at the
// end of the row.
void csr_multiply(std::size_t rows, const std::uint32_t* row_start,
                  const std::uint32_t* columns, const Complex* values,
                  const Complex* x, Complex* y, bool accumulate) {
  const double* xs = raw(x);
  const double* vs = raw(values);
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint32_t e = row_start[r];
    const std::uint32_t end = row_start[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; e + 2 <= end; e += 2) {
      const __m256d xv =
          _mm256_set_m128d(_mm_loadu_pd(xs + 2 * columns[e + 1]),
                           _mm_loadu_pd(xs + 2 * columns[e]));
      const __m256d v = _mm256_loadu_pd(vs + 2 * e);
      acc = _mm256_add_pd(
          acc, cmul(xv, _mm256_movedup_pd(v), _mm256_permute_pd(v, 0b1111)));
    }
    __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc),
                             _mm256_extractf128_pd(acc, 1));
    alignas(16) double pair[2];
    _mm_store_pd(pair, sum);
    Complex total{pair[0], pair[1]};
    if (e < end) total += mul(values[e], x[columns[e]]);
    y[r] = accumulate ? y[r] + total : total;
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::kAvx2, &axpy,  &add_scaled,  &scale,
                                 &dotc,      &gemm,  &csr_multiply};
  return &table;
}

}  // namespace qst::kernels

#else

namespace qst::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace qst::kernels

#endif
