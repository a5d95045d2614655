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
#include <optional>
#include <string_view>
#include <vector>

#include "qst/chain.hpp"
#include "qst/operators.hpp"

namespace qst {

enum class EncodingId { kA, kB, kSinglet };

// CLI spellings: a, b, singlet.
std::string_view encoding_name(EncodingId id);
EncodingId parse_encoding(std::string_view name);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

enum class LogicalOp { kI, kX, kY, kZ };
inline constexpr std::array<LogicalOp, 3> kTracelessOps = {
    LogicalOp::kX, LogicalOp::kY, LogicalOp::kZ};

// Read-out head on the receiver pair: P = 2(II - ZZ) projects onto
// span{|01>, |10>}; the fallback is P / 2.
struct ReadoutRule {
  DenseOperator projector;   // 4 x 4
  DenseOperator fail_state;  // 4 x 4, unit trace
};

/* A logical qubit written into the first sites of a chain in |00...0>.

code_states[k] is the chain state carrying logical |k>. coding_ops hold the
half-normalized logical operators I, X, Y, Z written onto the code states,
tensored with the vacuum on the rest of the chain:

  (a)        |0> = |00...0>,   |1> = |10...0>
  (b)        |0> = |10...0>,   |1> = |01...0>
  singlet    |0> = |s1>|0...0>, |1> = |s2>|0...0>

For (b) this makes X = X1 X2 + Y1 Y2, Y = X1 Y2 - Y1 X2, Z = (Z2 - Z1) / 2
and I = I1 I2 - Z1 Z2 on the first pair. */
struct EncodingScheme {
  EncodingId id = EncodingId::kA;
  int n_sites = 0;
  std::vector<int> sender_sites;    // one-based
  std::vector<int> receiver_sites;  // one-based, trailing
  std::array<StateVector, 2> code_states;
  std::array<DenseOperator, 4> coding_ops;  // indexed by LogicalOp
  std::optional<ReadoutRule> readout;

  const DenseOperator& op(LogicalOp a) const {
    return coding_ops[static_cast<int>(a)];
  }
  int receiver_count() const {
    return static_cast<int>(receiver_sites.size());
  }
};

// Throws InvalidArgument when the chain is too short for the code
// (2 sites for a and b, 8 for the singlet code).
EncodingScheme make_scheme(EncodingId id, int n_sites);

// Half-normalized 2 x 2 logical operator.
DenseOperator logical_pauli(LogicalOp a);
// (1 + r . sigma) / 2.
DenseOperator logical_state(const BlochVector& r);

// I + r_x X + r_y Y + r_z Z on the code. Throws BlochOutOfBall for |r| > 1.
DenseOperator encode(const EncodingScheme& scheme, const BlochVector& r);

/* Where the noiseless chain leaves the code states at half period.

kets[k] is U(tau/2)|code_k> restricted to the receiver sites, the rest of the
chain being back in the vacuum. It carries the sector phases, so projecting
onto it both mirrors the code and undoes the phase. */
struct ReceiverFrame {
  std::array<StateVector, 2> kets;
  double transfer_time = 0.0;  // tau / 2
};

// Throws InvalidArgument when the chain does not return the code states to
// the receiver (overlap deficit above 1e-6).
ReceiverFrame receiver_frame(const EncodingScheme& scheme,
                             const ChainSpec& spec);

/* Linear part of the receiver's processing, for any operator on the chain.

Traces onto the receiver sites, applies the read-out of (b)
(x -> P x P + (Tr x - Tr P x P) fail), and reads the result in the receiver
frame. Weight outside the frame (the singlet code) is returned as the
maximally mixed logical state. Trace is preserved. */
DenseOperator decode_linear(const EncodingScheme& scheme,
                            const ReceiverFrame& frame,
                            const DenseOperator& x);

// Same on the reduced receiver-site operator.
DenseOperator decode_reduced(const EncodingScheme& scheme,
                             const ReceiverFrame& frame,
                             const DenseOperator& reduced);

// Received logical density matrix. Throws NonUnitTrace when
// |Tr rho - 1| > 1e-6.
DenseOperator decode(const EncodingScheme& scheme, const ReceiverFrame& frame,
                     const DenseOperator& rho);
DenseOperator decode(const EncodingScheme& scheme, const ChainSpec& spec,
                     const DenseOperator& rho);

// Two four-site singlets:
//   |s1> = (|01> - |10>)(|01> - |10>) / 2
//   |s2> = (|1100> + |0011> - (|01> + |10>)(|01> + |10>) / 2) / sqrt(3)
std::array<StateVector, 2> singlet_states();

}  // namespace qst
