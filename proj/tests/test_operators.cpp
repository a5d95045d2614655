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


#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <random>

#include "doctest.h"
#include "qst/error.hpp"
#include "qst/operators.hpp"
#include "test_util.hpp"

namespace qst {
namespace {

using testing::from_eigen;
using testing::to_eigen;

Eigen::Matrix2cd sigma(char which) {
  Eigen::Matrix2cd m;
  const Complex i{0.0, 1.0};
  switch (which) {
    case 'x':
      m << 0, 1, 1, 0;
      break;
    case 'y':
      m << 0, -i, i, 0;
      break;
    case 'z':
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

// op on `site` of n by explicit Kronecker products, site 1 leftmost.
Eigen::MatrixXcd kron_embed(const Eigen::MatrixXcd& op, int site, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 1; s <= n; ++s) {
    const Eigen::MatrixXcd f =
        s == site ? op : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity());
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

}  // namespace

TEST_CASE("half Paulis") {
  CHECK(max_abs_diff(pauli(PauliKind::kX), from_eigen(0.5 * sigma('x'))) == 0);
  CHECK(max_abs_diff(pauli(PauliKind::kY), from_eigen(0.5 * sigma('y'))) == 0);
  CHECK(max_abs_diff(pauli(PauliKind::kZ), from_eigen(0.5 * sigma('z'))) == 0);
  CHECK(max_abs_diff(pauli(PauliKind::kI), from_eigen(0.5 * sigma('i'))) == 0);
  // S+ = |0><1| lowers the excitation count
  const DenseOperator sp = pauli(PauliKind::kRaise);
  CHECK(sp(0, 1) == Complex{1.0});
  CHECK(sp(1, 0) == Complex{0.0});
  CHECK(max_abs_diff(sp, pauli(PauliKind::kX) +
                             Complex{0.0, 1.0} * pauli(PauliKind::kY)) < 1e-15);
  CHECK(max_abs_diff(pauli(PauliKind::kLower), dagger(sp)) == 0);

  // [X, Y] = i Z for the halves
  const DenseOperator c = commutator(pauli(PauliKind::kX), pauli(PauliKind::kY));
  CHECK(max_abs_diff(c, Complex{0.0, 1.0} * pauli(PauliKind::kZ)) < 1e-15);
  // X^2 = I / 2
  CHECK(max_abs_diff(pauli(PauliKind::kX) * pauli(PauliKind::kX),
                     0.5 * pauli(PauliKind::kI)) < 1e-15);
}

TEST_CASE("embed matches explicit Kronecker products") {
  for (int n = 1; n <= 5; ++n)
    for (int site = 1; site <= n; ++site)
      for (char w : {'x', 'y', 'z'}) {
        CAPTURE(n);
        CAPTURE(site);
        const DenseOperator e =
            embed(from_eigen(0.5 * sigma(w)), SiteIndex(site), n);
        CHECK(max_abs_diff(e, from_eigen(kron_embed(0.5 * sigma(w), site, n))) <
              1e-15);
      }
  CHECK_THROWS_AS(embed(pauli(PauliKind::kX), SiteIndex(0), 3), Error);
  CHECK_THROWS_AS(embed(pauli(PauliKind::kX), SiteIndex(4), 3), Error);
  try {
    embed(pauli(PauliKind::kX), SiteIndex(4), 3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSiteOutOfRange);
  }
}

TEST_CASE("site 1 is the most significant bit") {
  const StateVector v = basis_state("100");
  CHECK(basis_index("100") == 4);
  CHECK(v[4] == Complex{1.0});
  const DenseOperator z1 = embed(pauli(PauliKind::kZ), SiteIndex(1), 3);
  CHECK(z1(4, 4).real() == doctest::Approx(-0.5));
  CHECK(z1(3, 3).real() == doctest::Approx(0.5));
}

TEST_CASE("kron, dagger, trace") {
  std::mt19937_64 rng(3);
  const DenseOperator a = testing::random_hermitian(2, rng);
  const DenseOperator b = testing::random_hermitian(4, rng);
  const Eigen::MatrixXcd k =
      Eigen::kroneckerProduct(to_eigen(a), to_eigen(b)).eval();
  CHECK(max_abs_diff(kron(a, b), from_eigen(k)) < 1e-15);
  CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-13);
  const DenseOperator p = a * a;
  CHECK(std::abs(trace_product(a, a) - trace(p)) < 1e-13);
  CHECK(is_hermitian(b));
  DenseOperator skew = b;
  skew(0, 1) += Complex{0.1, 0.0};
  CHECK_FALSE(is_hermitian(skew));
  CHECK(is_hermitian(hermitize(skew)));
}

TEST_CASE("partial trace against the definition") {
  std::mt19937_64 rng(9);
  const int n = 4;
  const DenseOperator rho = testing::random_density(16, rng);
  for (int keep = 1; keep <= n; ++keep) {
    CAPTURE(keep);
    const std::size_t dk = std::size_t{1} << keep;
    const std::size_t dt = std::size_t{16} >> keep;
    DenseOperator ref(dk);
    for (std::size_t r = 0; r < dk; ++r)
      for (std::size_t c = 0; c < dk; ++c)
        for (std::size_t e = 0; e < dt; ++e) ref(r, c) += rho(e * dk + r, e * dk + c);
    CHECK(max_abs_diff(partial_trace_trailing(rho, keep), ref) < 1e-15);
  }
  // product states reduce to the trailing factor
  const DenseOperator a = testing::random_density(2, rng);
  const DenseOperator b = testing::random_density(4, rng);
  CHECK(max_abs_diff(partial_trace_trailing(kron(a, b), 2), b) < 1e-14);
}

TEST_CASE("mirror permutation reverses sites") {
  CHECK(mirror_index(basis_index("1101"), 4) == basis_index("1011"));
  const DenseOperator m = mirror_permutation(3);
  CHECK(max_abs_diff(m * m, DenseOperator::identity(8)) == 0);
  const DenseOperator x1 = embed(pauli(PauliKind::kX), SiteIndex(1), 3);
  const DenseOperator x3 = embed(pauli(PauliKind::kX), SiteIndex(3), 3);
  CHECK(max_abs_diff(m * x1 * m, x3) < 1e-15);
}

TEST_CASE("eigh reconstructs the matrix") {
  std::mt19937_64 rng(21);
  const DenseOperator h = testing::random_hermitian(8, rng);
  const EigenSystem es = eigh(h);
  REQUIRE(es.values.size() == 8);
  for (std::size_t k = 1; k < 8; ++k) CHECK(es.values[k] >= es.values[k - 1]);
  DenseOperator d(8);
  for (std::size_t k = 0; k < 8; ++k) d(k, k) = es.values[k];
  CHECK(max_abs_diff(es.vectors * d * dagger(es.vectors), h) < 1e-12);
  CHECK(min_eigenvalue(h) == doctest::Approx(es.values[0]));
}

TEST_CASE("vector helpers") {
  const StateVector a = basis_state("01");
  const StateVector b = basis_state("10");
  CHECK(std::abs(inner(a, b)) == 0.0);
  CHECK(norm(a) == doctest::Approx(1.0));
  const DenseOperator p = outer(a, a);
  CHECK(trace(p).real() == doctest::Approx(1.0));
  const DenseOperator x2 = embed(pauli(PauliKind::kX), SiteIndex(2), 2);
  const StateVector flipped = qst::apply(x2, basis_state("00"));
  CHECK(std::abs(flipped[basis_index("01")] - Complex{0.5}) < 1e-15);
  CHECK_THROWS_AS(basis_state("012"), Error);
}

TEST_CASE("collective operators") {
  const StateVector vac = basis_state("00");
  const StateVector z = qst::apply(total_operator(PauliKind::kZ, 2), vac);
  CHECK(std::abs(z[0] - Complex{1.0}) < 1e-15);
  for (int n : {2, 4, 5}) {
    const DenseOperator up = total_operator(PauliKind::kRaise, n);
    const DenseOperator down = total_operator(PauliKind::kLower, n);
    CHECK(max_abs_diff(up, dagger(down)) == 0.0);
    // S+ = |0><1| removes excitations, so it kills the vacuum
    const StateVector v = basis_state(std::string(static_cast<std::size_t>(n), '0'));
    CHECK(norm(qst::apply(up, v)) == 0.0);
  }
  CHECK(std::abs(trace(embed(pauli(PauliKind::kZ), SiteIndex(3), 6))) == 0.0);
  const DenseOperator a = embed(pauli(PauliKind::kX), SiteIndex(1), 3);
  const DenseOperator b = embed(pauli(PauliKind::kY), SiteIndex(2), 3);
  CHECK(max_abs(commutator(a, b)) == 0.0);
  CHECK(is_hermitian(embed(pauli(PauliKind::kY), SiteIndex(2), 3)));
}

}  // namespace qst
