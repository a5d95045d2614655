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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "qst/chain.hpp"
#include "qst/encodings.hpp"
#include "qst/lindblad.hpp"
#include "qst/noise.hpp"

namespace qst {

/* Everything about one (code, chain) pair that does not depend on the noise:
the Hamiltonian, the transfer period, the receiver frame and the noiseless
logical images of the coding operators. Immutable once built; share freely
across threads. */
class TransferSetup {
 public:
  // Throws NotEquallySpaced / InvalidArgument for chains without perfect
  // transfer, DimensionMismatch when the code does not fit.
  TransferSetup(EncodingId encoding, const ChainSpec& spec);

  const EncodingScheme& scheme() const noexcept { return scheme_; }
  const ChainSpec& chain() const noexcept { return spec_; }
  const DenseOperator& hamiltonian() const noexcept { return hamiltonian_; }
  const ReceiverFrame& frame() const noexcept { return frame_; }
  const SpectralPropagator& propagator() const noexcept { return *propagator_; }
  double tau() const noexcept { return tau_; }
  double transfer_time() const noexcept { return frame_.transfer_time; }
  int n_sites() const noexcept { return spec_.n; }

  // Decoded noiseless image of the full Pauli 2A, A in {X, Y, Z}.
  const DenseOperator& target(LogicalOp a) const;

  // Noise with rates given in units of 1/tau, converted to simulation time.
  NoiseModel noise(NoiseId id, double gamma_per_tau,
                   std::optional<double> beta_b) const;

 private:
  EncodingScheme scheme_;
  ChainSpec spec_;
  DenseOperator hamiltonian_;
  double tau_ = 0.0;
  ReceiverFrame frame_;
  std::shared_ptr<const SpectralPropagator> propagator_;
  std::array<DenseOperator, 4> targets_;
};

struct FidelityRecord {
  NoiseId model = NoiseId::kNone;
  EncodingId encoding = EncodingId::kA;
  int n = 0;
  double gamma = 0.0;  // units of 1/tau
  double beta_b = 0.0;
  double f = 0.0;
  double f_x = 0.0;
  double f_y = 0.0;
  double f_z = 0.0;
  // (1/2) Tr of the decoded identity; 1 for a trace-preserving transfer.
  double identity_fidelity = 0.0;
  // Tr P rho P on the received maximally mixed code state (code b), else 1.
  double readout_success = 1.0;
  Diagnostics diagnostics;
  std::string error;  // set on records that failed to evaluate

  // Above the classical limit 2/3.
  bool quantum() const { return f > 2.0 / 3.0; }
};

/* Operator-transfer fidelity

  F^A = (1/2) Tr( D(L(2A)) D(U 2A U^+) ),

with L the noisy evolution to tau/2, U the noiseless one, D the receiver's
processing (decode_linear) and 2A the full Pauli written on the code. Equals
1 without noise. */
double operator_fidelity(LogicalOp a, const TransferSetup& setup,
                         const NoiseModel& noise,
                         const IntegratorConfig& config = {});

// F = 1/2 + (F^X + F^Y + F^Z) / 6. gamma in units of 1/tau. Throws on
// integrator tolerance violations.
FidelityRecord average_fidelity(const TransferSetup& setup, NoiseId model,
                                double gamma, std::optional<double> beta_b,
                                const IntegratorConfig& config = {});

FidelityRecord average_fidelity(EncodingId encoding, const ChainSpec& spec,
                                NoiseId model, double gamma,
                                std::optional<double> beta_b,
                                const IntegratorConfig& config = {});

struct MonteCarloOptions {
  int samples = 10000;  // at least 100
  std::uint64_t seed = 1;
  // Evolve every sample on its own instead of combining four evolved
  // tetrahedron states. Exact either way; this is the slow cross-check.
  bool direct_evolution = false;
};

struct MonteCarloResult {
  double mean = 0.0;
  double stderr_mean = 0.0;
  int samples = 0;
};

// Uniform point on the unit sphere: z = 2u - 1, phi = 2 pi v.
BlochVector sample_bloch(std::mt19937_64& rng);

// Sample average of Tr(D(L rho) D(U rho U^+)) over uniform pure inputs.
MonteCarloResult monte_carlo_fidelity(const TransferSetup& setup,
                                      NoiseId model, double gamma,
                                      std::optional<double> beta_b,
                                      const IntegratorConfig& config,
                                      const MonteCarloOptions& options = {});

}  // namespace qst
