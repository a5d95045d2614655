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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qst {

using Complex = std::complex<double>;

namespace kernels {

/* Inner loops of the simulator.

Every kernel works on contiguous arrays of std::complex<double>, which the
standard guarantees to be laid out as interleaved (re, im) pairs. The scalar
table is the reference; the AVX2+FMA table must agree with it to rounding
(see tests/test_kernels.cpp). The active table is picked once, on first use,
from the CPU feature bits. Setting QST_KERNELS=scalar in the environment forces
the reference path. */

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  // y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);
  // out[i] = x[i] + alpha * y[i]; out may alias x.
  void (*add_scaled)(std::size_t n, const Complex* x, Complex alpha,
                     const Complex* y, Complex* out);
  // x[i] *= alpha
  void (*scale)(std::size_t n, Complex alpha, Complex* x);
  // sum_i conj(x[i]) * y[i]
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);
  // C = A * B for row-major square matrices of size dim.
  void (*gemm)(std::size_t dim, const Complex* a, const Complex* b,
               Complex* c);
  // Compressed-row product: y[r] (+)= sum_e values[e] * x[columns[e]] over
  // e in [row_start[r], row_start[r + 1]).
  void (*csr_multiply)(std::size_t rows, const std::uint32_t* row_start,
                       const std::uint32_t* columns, const Complex* values,
                       const Complex* x, Complex* y, bool accumulate);
};

const KernelTable& scalar_table();

// Returns nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();

// True when the running CPU can execute the AVX2+FMA table.
bool cpu_supports_avx2();

// The table used by the rest of the library.
const KernelTable& active();

// Overrides the active table. Throws if the ISA is unavailable on this CPU.
void select(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace kernels
}  // namespace qst
