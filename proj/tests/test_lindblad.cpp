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


#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qst/chain.hpp"
#include "qst/encodings.hpp"
#include "qst/error.hpp"
#include "qst/lindblad.hpp"
#include "qst/noise.hpp"
#include "test_util.hpp"

namespace qst {
namespace {

// L(rho) written out with dense products.
DenseOperator literal_rhs(const DenseOperator& rho, const DenseOperator& h,
                          const NoiseModel& noise) {
  DenseOperator out = Complex{0.0, -1.0} * commutator(h, rho);
  for (const LindbladTerm& t : noise.terms) {
    const DenseOperator kd = dagger(t.op);
    const DenseOperator kk = kd * t.op;
    DenseOperator d = t.op * rho * kd;
    d.add_scaled(-0.5, kk * rho);
    d.add_scaled(-0.5, rho * kk);
    out.add_scaled(t.rate, d);
  }
  return out;
}

const NoiseId kAllModels[] = {NoiseId::kNone,          NoiseId::kLocalTwirl,
                              NoiseId::kLocalThermal,  NoiseId::kLocalDephase,
                              NoiseId::kGlobalDephase, NoiseId::kGlobalThermal};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("generator matches the literal dissipator for every model") {
  std::mt19937_64 rng(17);
  for (int n : {2, 3, 4}) {
    const DenseOperator h = build_hamiltonian(pst_spec(n, 0.3));
    const DenseOperator rho = testing::random_density(h.dim(), rng);
    // a non-Hermitian input exercises the rho^+ folding too
    DenseOperator skew = testing::random_hermitian(h.dim(), rng);
    skew(0, h.dim() - 1) += Complex{0.2, 0.4};
    for (NoiseId id : kAllModels) {
      const NoiseModel noise = make_noise(id, 0.37, 0.8, n);
      for (auto strategy : {GeneratorStrategy::kRowProducts,
                            GeneratorStrategy::kSuperoperator,
                            GeneratorStrategy::kAuto}) {
        CAPTURE(n);
        CAPTURE(noise_name(id));
        CAPTURE(static_cast<int>(strategy));
        const LindbladGenerator g(h, noise, strategy);
        DenseOperator out(h.dim());
        g.apply(rho, out);
        CHECK(max_abs_diff(out, literal_rhs(rho, h, noise)) < 1e-13);
        g.apply(skew, out);
        CHECK(max_abs_diff(out, literal_rhs(skew, h, noise)) < 1e-13);
      }
      CHECK(max_abs_diff(lindblad_rhs(rho, h, noise),
                         literal_rhs(rho, h, noise)) < 1e-13);
    }
  }
}

TEST_CASE("generator is traceless and Hermiticity preserving") {
  std::mt19937_64 rng(2);
  const DenseOperator h = build_hamiltonian(pst_spec(3, 0.0));
  const DenseOperator rho = testing::random_density(8, rng);
  for (NoiseId id : kAllModels) {
    const DenseOperator d = lindblad_rhs(rho, h, make_noise(id, 1.3, 0.0, 3));
    CHECK(std::abs(trace(d)) < 1e-13);
    CHECK(hermiticity_defect(d) < 1e-13);
  }
}

TEST_CASE("single-spin twirl contracts toward the identity") {
  // For one spin the X, Y, Z jumps at rate g give g (Tr rho 1/2 - rho).
  std::mt19937_64 rng(4);
  const DenseOperator rho = testing::random_density(2, rng);
  const double g = 0.9;
  const NoiseModel noise = make_noise(NoiseId::kLocalTwirl, g, {}, 1);
  DenseOperator expect = DenseOperator::identity(2);
  expect *= 0.5 * trace(rho);
  expect -= rho;
  expect *= g;
  CHECK(max_abs_diff(lindblad_rhs(rho, DenseOperator(2), noise), expect) <
        1e-15);
}

TEST_CASE("amplitude damping of one spin") {
  // |1> decays to |0> at rate g: populations e^{-g t}, coherence e^{-g t/2}.
  const double g = 0.8, t = 1.7;
  const NoiseModel noise = make_noise(
      NoiseId::kLocalThermal, g, std::numeric_limits<double>::infinity(), 1);
  DenseOperator rho(2);
  rho(0, 0) = rho(1, 1) = rho(0, 1) = rho(1, 0) = 0.5;
  IntegratorConfig cfg;
  cfg.steps_per_half_period = 400;
  const EvolutionResult r = evolve(rho, DenseOperator(2), noise, t, cfg);
  CHECK(r.rho(1, 1).real() == doctest::Approx(0.5 * std::exp(-g * t)).epsilon(1e-9));
  CHECK(r.rho(0, 0).real() ==
        doctest::Approx(1.0 - 0.5 * std::exp(-g * t)).epsilon(1e-9));
  CHECK(r.rho(0, 1).real() ==
        doctest::Approx(0.5 * std::exp(-0.5 * g * t)).epsilon(1e-9));
}

TEST_CASE("integrators agree with the matrix exponential") {
  std::mt19937_64 rng(8);
  const int n = 3;
  const DenseOperator h = build_hamiltonian(pst_spec(n, 0.2));
  const DenseOperator rho = testing::random_density(8, rng);
  const double t = std::numbers::pi;
  for (NoiseId id : kAllModels) {
    CAPTURE(noise_name(id));
    const NoiseModel noise = make_noise(id, 0.25, 0.5, n);
    const DenseOperator ref =
        testing::expm_evolve(testing::dense_superoperator(h, noise), rho, t);
    for (Method m : {Method::kRk4, Method::kSplitStep}) {
      IntegratorConfig cfg;
      cfg.method = m;
      const EvolutionResult r = evolve(rho, h, noise, t, cfg);
      CAPTURE(method_name(m));
      // Strang splitting is second order, RK4 fourth
      const double tol = m == Method::kRk4 ? 1e-9 : 2e-7;
      CHECK(max_abs_diff(r.rho, ref) < tol);
      CHECK(r.diagnostics.max_trace_drift < 1e-12);
      CHECK(r.diagnostics.min_eigenvalue > -1e-10);
      CHECK(r.diagnostics.steps_used == (id == NoiseId::kNone ? 0 : 600));
    }
  }
}

TEST_CASE("operator evolution is linear") {
  std::mt19937_64 rng(12);
  const DenseOperator h = build_hamiltonian(pst_spec(3, 0.0));
  const NoiseModel noise = make_noise(NoiseId::kLocalDephase, 0.5, {}, 3);
  const DenseOperator a = testing::random_hermitian(8, rng);
  const DenseOperator b = testing::random_hermitian(8, rng);
  const Integrator integ(h, noise, {});
  const DenseOperator lhs = integ.evolve_operator(a + 2.0 * b, 1.0).rho;
  const DenseOperator rhs = integ.evolve_operator(a, 1.0).rho +
                            2.0 * integ.evolve_operator(b, 1.0).rho;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("steps scale with time and t = 0 is the identity") {
  const DenseOperator h = build_hamiltonian(pst_spec(2, 0.0));
  const Integrator integ(h, make_noise(NoiseId::kLocalTwirl, 1.0, {}, 2), {});
  CHECK(integ.steps_for(std::numbers::pi) == 600);
  CHECK(integ.steps_for(2.0 * std::numbers::pi) == 1200);
  std::mt19937_64 rng(1);
  const DenseOperator rho = testing::random_density(4, rng);
  CHECK(max_abs_diff(integ.evolve_state(rho, 0.0).rho, rho) < 1e-15);
}

TEST_CASE("configuration and input checks") {
  IntegratorConfig cfg;
  cfg.steps_per_half_period = 29;
  CHECK_THROWS_AS(cfg.validate(), Error);
  const DenseOperator h = build_hamiltonian(pst_spec(2, 0.0));
  const NoiseModel noise = make_noise(NoiseId::kNone, 0.0, {}, 2);
  CHECK_THROWS_AS(Integrator(h, noise, cfg), Error);
  cfg.steps_per_half_period = 30;
  CHECK_NOTHROW(Integrator(h, noise, cfg));

  DenseOperator bad = DenseOperator::identity(4);  // trace 4
  CHECK_THROWS_AS(evolve(bad, h, noise, 1.0), Error);
  CHECK_THROWS_AS(evolve(DenseOperator::identity(8), h, noise, 1.0), Error);
  CHECK(parse_method("split") == Method::kSplitStep);
  CHECK(parse_method(method_name(Method::kRk4)) == Method::kRk4);
  CHECK_THROWS_AS(parse_method("euler"), Error);
}

TEST_CASE("sparse rows") {
  std::mt19937_64 rng(30);
  DenseOperator a = testing::random_hermitian(8, rng);
  for (std::size_t r = 0; r < 8; ++r) a(r, (r + 3) % 8) = 0.0;
  const SparseRows s(a);
  CHECK(s.dim() == 8);
  CHECK(s.nonzeros() <= 56);
  const DenseOperator x = testing::random_hermitian(8, rng);
  DenseOperator out(8);
  s.multiply(Complex{0.0, 2.0}, x, out, false);
  CHECK(max_abs_diff(out, Complex{0.0, 2.0} * (a * x)) < 1e-13);
  StateVector v(8, Complex{1.0}), w(8);
  s.multiply_vector(v.data(), w.data(), false);
  const StateVector ref = qst::apply(a, v);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(w[k] - ref[k]) < 1e-13);
}

TEST_CASE("decay rate of an excited spin") {
  // rho0 = |1><1|, H = 0: d rho11 / dt = -g rho11. Fit log populations.
  const double g = 1.3;
  const NoiseModel noise = make_noise(NoiseId::kLocalThermal, g, kInfinity, 1);
  DenseOperator rho(2);
  rho(1, 1) = 1.0;
  const Integrator integ(DenseOperator(2), noise, {});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = 8;
  for (int k = 1; k <= m; ++k) {
    const double t = 0.25 * k;
    const double p = integ.evolve_state(rho, t).rho(1, 1).real();
    const double y = std::log(p);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(std::abs(-slope - g) < 1e-4);
}

TEST_CASE("stationary inputs") {
  const DenseOperator h = build_hamiltonian(pst_spec(3, 0.4));
  const EigenSystem es = eigh(h);
  StateVector v(8);
  for (std::size_t r = 0; r < 8; ++r) v[r] = es.vectors(r, 3);
  const NoiseModel none = make_noise(NoiseId::kNone, 0.0, {}, 3);
  CHECK(max_abs(lindblad_rhs(outer(v, v), h, none)) < 1e-13);

  std::mt19937_64 rng(6);
  DenseOperator diag(8);
  for (std::size_t r = 0; r < 8; ++r) diag(r, r) = 0.125;
  const NoiseModel dephase = make_noise(NoiseId::kLocalDephase, 1.0, {}, 3);
  CHECK(max_abs(lindblad_rhs(diag, DenseOperator(8), dephase)) == 0.0);

  // unital models keep the maximally mixed operator
  for (NoiseId id : {NoiseId::kLocalTwirl, NoiseId::kLocalDephase,
                     NoiseId::kGlobalDephase}) {
    const EvolutionResult r =
        evolve_operator(diag, h, make_noise(id, 0.8, {}, 3), 2.0);
    CHECK(max_abs_diff(r.rho, diag) < 1e-10);
  }
}

TEST_CASE("collective dephasing leaves code b alone") {
  const int n = 6;
  const ChainSpec spec = pst_spec(n, 0.0);
  const DenseOperator h = build_hamiltonian(spec);
  const NoiseModel noise = make_noise(NoiseId::kGlobalDephase, 0.9, {}, n);
  const NoiseModel none = make_noise(NoiseId::kNone, 0.0, {}, n);
  const EncodingScheme b = make_scheme(EncodingId::kB, n);
  const DenseOperator& k = noise.terms[0].op;
  CHECK(max_abs(commutator(k, h)) < 1e-12);
  for (const DenseOperator& op : b.coding_ops)
    CHECK(max_abs(commutator(k, op)) < 1e-12);

  const DenseOperator rho = encode(b, {0.6, -0.3, 0.5});
  CHECK(max_abs_diff(evolve(rho, h, noise, std::numbers::pi).rho,
                     evolve(rho, h, none, std::numbers::pi).rho) < 1e-8);
  const DenseOperator x = b.op(LogicalOp::kX);
  CHECK(max_abs_diff(evolve_operator(x, h, noise, std::numbers::pi).rho,
                     evolve_operator(x, h, none, std::numbers::pi).rho) < 1e-8);
}

TEST_CASE("noiseless operator flow is the unitary conjugation") {
  std::mt19937_64 rng(19);
  const ChainSpec spec = pst_spec(4, 0.3);
  const DenseOperator h = build_hamiltonian(spec);
  const DenseOperator a = testing::random_hermitian(16, rng);
  const double tau = 2.0 * std::numbers::pi;
  const SpectralPropagator prop(h);
  for (Method m : {Method::kRk4, Method::kSplitStep}) {
    IntegratorConfig cfg;
    cfg.method = m;
    const EvolutionResult r = evolve_operator(
        a, h, make_noise(NoiseId::kNone, 0.0, {}, 4), tau, cfg);
    CHECK(max_abs_diff(r.rho, prop.conjugate(a, tau)) < 1e-7);
  }
}

TEST_CASE("state evolution is the combination of evolved coding operators") {
  const int n = 4;
  const DenseOperator h = build_hamiltonian(pst_spec(n, 0.0));
  const NoiseModel noise = make_noise(NoiseId::kLocalThermal, 0.4, 0.7, n);
  const Integrator integ(h, noise, {});
  for (EncodingId id : {EncodingId::kA, EncodingId::kB}) {
    const EncodingScheme s = make_scheme(id, n);
    const BlochVector r{0.3, 0.5, -0.7};
    DenseOperator combo = integ.evolve_operator(s.op(LogicalOp::kI), 2.0).rho;
    combo.add_scaled(r.x, integ.evolve_operator(s.op(LogicalOp::kX), 2.0).rho);
    combo.add_scaled(r.y, integ.evolve_operator(s.op(LogicalOp::kY), 2.0).rho);
    combo.add_scaled(r.z, integ.evolve_operator(s.op(LogicalOp::kZ), 2.0).rho);
    CHECK(max_abs_diff(integ.evolve_state(encode(s, r), 2.0).rho, combo) < 1e-9);
  }
}

TEST_CASE("RK4 converges at fourth order") {
  std::mt19937_64 rng(23);
  const DenseOperator h = build_hamiltonian(pst_spec(3, 0.0));
  const NoiseModel noise = make_noise(NoiseId::kLocalTwirl, 0.5, {}, 3);
  const DenseOperator rho = testing::random_density(8, rng);
  auto run = [&](int steps) {
    IntegratorConfig cfg;
    cfg.steps_per_half_period = steps;
    return evolve(rho, h, noise, std::numbers::pi, cfg).rho;
  };
  const DenseOperator ref = run(240);
  const double coarse = max_abs_diff(run(30), ref);
  const double fine = max_abs_diff(run(60), ref);
  CHECK(coarse / fine >= 12.0);
}

}  // namespace qst
