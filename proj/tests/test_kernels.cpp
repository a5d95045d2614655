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


#include <random>
#include <vector>

#include "doctest.h"
#include "qst/kernels.hpp"

namespace qst::kernels {
namespace {

std::vector<Complex> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const KernelTable* vector_table() {
  if (!cpu_supports_avx2()) return nullptr;
  return avx2_table();
}

}  // namespace

TEST_CASE("scalar table is the reference") {
  CHECK(scalar_table().isa == Isa::kScalar);
  CHECK(isa_name(Isa::kScalar) == "scalar");
}

TEST_CASE("avx2 kernels agree with scalar at odd sizes") {
  const KernelTable* v = vector_table();
  if (v == nullptr) {
    MESSAGE("no AVX2 on this CPU; skipped");
    return;
  }
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(7);
  const Complex alpha{0.3, -1.7};
  for (std::size_t n : {1u, 2u, 3u, 5u, 7u, 16u, 33u, 101u}) {
    CAPTURE(n);
    const auto x = random_vector(n, rng);
    const auto y0 = random_vector(n, rng);

    auto ys = y0, yv = y0;
    s.axpy(n, alpha, x.data(), ys.data());
    v->axpy(n, alpha, x.data(), yv.data());
    CHECK(max_diff(ys, yv) < 1e-14);

    std::vector<Complex> os(n), ov(n);
    s.add_scaled(n, x.data(), alpha, y0.data(), os.data());
    v->add_scaled(n, x.data(), alpha, y0.data(), ov.data());
    CHECK(max_diff(os, ov) < 1e-14);
    // aliasing out == x
    auto xs = x, xv = x;
    s.add_scaled(n, xs.data(), alpha, y0.data(), xs.data());
    v->add_scaled(n, xv.data(), alpha, y0.data(), xv.data());
    CHECK(max_diff(xs, xv) < 1e-14);

    xs = x;
    xv = x;
    s.scale(n, alpha, xs.data());
    v->scale(n, alpha, xv.data());
    CHECK(max_diff(xs, xv) < 1e-14);

    CHECK(std::abs(s.dotc(n, x.data(), y0.data()) -
                   v->dotc(n, x.data(), y0.data())) < 1e-12);
  }
}

TEST_CASE("dotc conjugates its first argument") {
  const std::vector<Complex> x = {{0.0, 1.0}, {2.0, 0.0}, {1.0, 1.0}};
  const std::vector<Complex> y = {{0.0, 1.0}, {1.0, 0.0}, {1.0, -1.0}};
  // conj(i) i + 2 + (1 - i)(1 - i) = 1 + 2 - 2i
  const Complex expect{3.0, -2.0};
  CHECK(std::abs(scalar_table().dotc(3, x.data(), y.data()) - expect) < 1e-15);
  if (const KernelTable* v = vector_table())
    CHECK(std::abs(v->dotc(3, x.data(), y.data()) - expect) < 1e-15);
}

TEST_CASE("gemm matches a naive triple loop") {
  std::mt19937_64 rng(11);
  for (std::size_t dim : {1u, 2u, 3u, 8u, 17u}) {
    CAPTURE(dim);
    const auto a = random_vector(dim * dim, rng);
    const auto b = random_vector(dim * dim, rng);
    std::vector<Complex> ref(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
          acc += a[i * dim + k] * b[k * dim + j];
        ref[i * dim + j] = acc;
      }
    std::vector<Complex> c(dim * dim);
    scalar_table().gemm(dim, a.data(), b.data(), c.data());
    CHECK(max_diff(c, ref) < 1e-12);
    if (const KernelTable* v = vector_table()) {
      v->gemm(dim, a.data(), b.data(), c.data());
      CHECK(max_diff(c, ref) < 1e-12);
    }
  }
}

TEST_CASE("csr_multiply matches a dense product") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t rows : {1u, 4u, 9u, 31u}) {
    CAPTURE(rows);
    std::vector<Complex> dense(rows * rows);
    std::vector<std::uint32_t> row_start{0}, columns;
    std::vector<Complex> values;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < rows; ++c) {
        if (u(rng) < 0.4) {
          const Complex e{u(rng) - 0.5, u(rng) - 0.5};
          dense[r * rows + c] = e;
          columns.push_back(static_cast<std::uint32_t>(c));
          values.push_back(e);
        }
      }
      row_start.push_back(static_cast<std::uint32_t>(values.size()));
    }
    const auto x = random_vector(rows, rng);
    const auto y0 = random_vector(rows, rng);
    std::vector<Complex> ref(rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < rows; ++c) ref[r] += dense[r * rows + c] * x[c];
    std::vector<Complex> ref_acc = ref;
    for (std::size_t r = 0; r < rows; ++r) ref_acc[r] += y0[r];

    std::vector<const KernelTable*> tables{&scalar_table()};
    if (const KernelTable* v = vector_table()) tables.push_back(v);
    for (const KernelTable* t : tables) {
      CAPTURE(isa_name(t->isa));
      auto y = y0;
      t->csr_multiply(rows, row_start.data(), columns.data(), values.data(),
                      x.data(), y.data(), false);
      CHECK(max_diff(y, ref) < 1e-14);
      y = y0;
      t->csr_multiply(rows, row_start.data(), columns.data(), values.data(),
                      x.data(), y.data(), true);
      CHECK(max_diff(y, ref_acc) < 1e-14);
    }
  }
}

TEST_CASE("select switches the active table") {
  const Isa before = active().isa;
  select(Isa::kScalar);
  CHECK(active().isa == Isa::kScalar);
  if (vector_table() != nullptr) {
    select(Isa::kAvx2);
    CHECK(active().isa == Isa::kAvx2);
  }
  select(before);
}

}  // namespace qst::kernels
