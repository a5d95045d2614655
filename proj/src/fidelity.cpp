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


#include "qst/fidelity.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qst/error.hpp"

namespace qst {
namespace {

int op_index(LogicalOp a) { return static_cast<int>(a); }

double pair_fidelity(const DenseOperator& received,
                     const DenseOperator& target) {
  return 0.5 * trace_product(received, target).real();
}

void merge(Diagnostics& into, const Diagnostics& from) {
  into.max_trace_drift = std::max(into.max_trace_drift, from.max_trace_drift);
  into.hermiticity_defect =
      std::max(into.hermiticity_defect, from.hermiticity_defect);
  into.steps_used = std::max(into.steps_used, from.steps_used);
}

// Tetrahedron on the unit sphere; sum r_j = 0 and sum r_j r_j^T = 4/3.
std::array<BlochVector, 4> tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return {{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}};
}

// Affine weights expressing r through the tetrahedron vertices.
std::array<double, 4> vertex_weights(const BlochVector& r) {
  const auto v = tetrahedron();
  std::array<double, 4> w{};
  for (int j = 0; j < 4; ++j)
    w[j] = 0.25 * (1.0 + 3.0 * (r.x * v[j].x + r.y * v[j].y + r.z * v[j].z));
  return w;
}

}  // namespace

TransferSetup::TransferSetup(EncodingId encoding, const ChainSpec& spec)
    : scheme_(make_scheme(encoding, spec.n)),
      spec_(spec),
      hamiltonian_(build_hamiltonian(spec)),
      tau_(transfer_period(spec)),
      frame_(receiver_frame(scheme_, spec)),
      propagator_(std::make_shared<SpectralPropagator>(hamiltonian_)) {
  for (LogicalOp a : kTracelessOps) {
    const DenseOperator moved = propagator_->conjugate(
        Complex{2.0} * scheme_.op(a), frame_.transfer_time);
    targets_[op_index(a)] = decode_linear(scheme_, frame_, moved);
  }
}

const DenseOperator& TransferSetup::target(LogicalOp a) const {
  if (a == LogicalOp::kI) {
    throw Error(ErrorKind::kInvalidArgument, "no target for the identity");
  }
  return targets_[op_index(a)];
}

NoiseModel TransferSetup::noise(NoiseId id, double gamma_per_tau,
                                std::optional<double> beta_b) const {
  return make_noise(id, gamma_per_tau / tau_, beta_b, spec_.n);
}

double operator_fidelity(LogicalOp a, const TransferSetup& setup,
                         const NoiseModel& noise,
                         const IntegratorConfig& config) {
  const Integrator integrator(setup.hamiltonian(), noise, config);
  const EvolutionResult evolved = integrator.evolve_operator(
      Complex{2.0} * setup.scheme().op(a), setup.transfer_time());
  return pair_fidelity(
      decode_linear(setup.scheme(), setup.frame(), evolved.rho),
      setup.target(a));
}

FidelityRecord average_fidelity(const TransferSetup& setup, NoiseId model,
                                double gamma, std::optional<double> beta_b,
                                const IntegratorConfig& config) {
  FidelityRecord rec;
  rec.model = model;
  rec.encoding = setup.scheme().id;
  rec.n = setup.n_sites();
  rec.gamma = gamma;
  const NoiseModel noise = setup.noise(model, gamma, beta_b);
  rec.beta_b = noise.beta_b;
  const Integrator integrator(setup.hamiltonian(), noise, config);
  const EncodingScheme& scheme = setup.scheme();
  const double t = setup.transfer_time();

  // The maximally mixed code state, evolved as a state so that positivity
  // is checked along with the trace.
  const EvolutionResult mixed =
      integrator.evolve_state(scheme.op(LogicalOp::kI), t);
  rec.diagnostics = mixed.diagnostics;
  const DenseOperator mixed_logical =
      decode_linear(scheme, setup.frame(), Complex{2.0} * mixed.rho);
  rec.identity_fidelity = 0.5 * trace(mixed_logical).real();
  if (scheme.readout) {
    const DenseOperator reduced =
        partial_trace_trailing(mixed.rho, scheme.receiver_count());
    const DenseOperator& p = scheme.readout->projector;
    rec.readout_success = trace(p * reduced * p).real();
  }

  double min_eig = mixed.diagnostics.min_eigenvalue;
  std::array<double, 3> fa{};
  for (int k = 0; k < 3; ++k) {
    const LogicalOp a = kTracelessOps[k];
    const EvolutionResult ev =
        integrator.evolve_operator(Complex{2.0} * scheme.op(a), t);
    merge(rec.diagnostics, ev.diagnostics);
    fa[k] = pair_fidelity(decode_linear(scheme, setup.frame(), ev.rho),
                          setup.target(a));
    // Received images of the pure inputs +-A are mixed +- ev / 2.
    for (double sign : {1.0, -1.0}) {
      DenseOperator pure = mixed.rho;
      pure.add_scaled(0.5 * sign, ev.rho);
      min_eig = std::min(min_eig, min_eigenvalue(pure));
    }
  }
  rec.diagnostics.min_eigenvalue = min_eig;
  if (min_eig < -config.tolerances.positivity) {
    throw ToleranceViolated(
        "negative eigenvalue " + std::to_string(min_eig), rec.diagnostics);
  }
  rec.f_x = fa[0];
  rec.f_y = fa[1];
  rec.f_z = fa[2];
  rec.f = 0.5 + (rec.f_x + rec.f_y + rec.f_z) / 6.0;
  return rec;
}

FidelityRecord average_fidelity(EncodingId encoding, const ChainSpec& spec,
                                NoiseId model, double gamma,
                                std::optional<double> beta_b,
                                const IntegratorConfig& config) {
  return average_fidelity(TransferSetup(encoding, spec), model, gamma, beta_b,
                          config);
}

BlochVector sample_bloch(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double z = 2.0 * unit(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

MonteCarloResult monte_carlo_fidelity(const TransferSetup& setup,
                                      NoiseId model, double gamma,
                                      std::optional<double> beta_b,
                                      const IntegratorConfig& config,
                                      const MonteCarloOptions& options) {
  if (options.samples < 100) {
    throw Error(ErrorKind::kInvalidArgument,
                "Monte Carlo needs at least 100 samples");
  }
  const NoiseModel noise = setup.noise(model, gamma, beta_b);
  const Integrator integrator(setup.hamiltonian(), noise, config);
  const EncodingScheme& scheme = setup.scheme();
  const ReceiverFrame& frame = setup.frame();
  const double t = setup.transfer_time();

  auto received = [&](const BlochVector& r) {
    return decode(scheme, frame, integrator.evolve_state(encode(scheme, r), t).rho);
  };
  auto expected = [&](const BlochVector& r) {
    return decode(scheme, frame,
                  setup.propagator().conjugate(encode(scheme, r), t));
  };

  std::array<DenseOperator, 4> vertex_received;
  std::array<DenseOperator, 4> vertex_expected;
  if (!options.direct_evolution) {
    const auto vertices = tetrahedron();
    for (int j = 0; j < 4; ++j) {
      vertex_received[j] = received(vertices[j]);
      vertex_expected[j] = expected(vertices[j]);
    }
  }

  std::mt19937_64 rng(options.seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const BlochVector r = sample_bloch(rng);
    double f = 0.0;
    if (options.direct_evolution) {
      f = trace_product(received(r), expected(r)).real();
    } else {
      const auto w = vertex_weights(r);
      DenseOperator got(2);
      DenseOperator want(2);
      for (int j = 0; j < 4; ++j) {
        got.add_scaled(w[j], vertex_received[j]);
        want.add_scaled(w[j], vertex_expected[j]);
      }
      f = trace_product(got, want).real();
    }
    sum += f;
    sum_sq += f * f;
  }
  MonteCarloResult out;
  out.samples = options.samples;
  const double n = options.samples;
  out.mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1));
  out.stderr_mean = std::sqrt(var / n);
  return out;
}

}  // namespace qst
