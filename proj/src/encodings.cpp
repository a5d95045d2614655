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


#include "qst/encodings.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qst/error.hpp"

namespace qst {
namespace {

// |local> on the first sites of an n-site chain, vacuum elsewhere.
StateVector pad_with_vacuum(const StateVector& local, int n_sites) {
  const int k = std::countr_zero(local.size());
  StateVector out(std::size_t{1} << n_sites);
  for (std::size_t i = 0; i < local.size(); ++i)
    out[i << (n_sites - k)] = local[i];
  return out;
}

std::vector<int> site_range(int first, int last) {
  std::vector<int> out;
  for (int s = first; s <= last; ++s) out.push_back(s);
  return out;
}

// <a| m |b> for a small dense m.
Complex sandwich(const StateVector& a, const DenseOperator& m,
                 const StateVector& b) {
  return inner(a, apply(m, b));
}

}  // namespace

std::string_view encoding_name(EncodingId id) {
  switch (id) {
    case EncodingId::kA:
      return "a";
    case EncodingId::kB:
      return "b";
    case EncodingId::kSinglet:
      return "singlet";
  }
  return "unknown";
}

EncodingId parse_encoding(std::string_view name) {
  for (EncodingId id : {EncodingId::kA, EncodingId::kB, EncodingId::kSinglet})
    if (encoding_name(id) == name) return id;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown encoding '" + std::string(name) + "'");
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DenseOperator logical_pauli(LogicalOp a) {
  switch (a) {
    case LogicalOp::kI:
      return pauli(PauliKind::kI);
    case LogicalOp::kX:
      return pauli(PauliKind::kX);
    case LogicalOp::kY:
      return pauli(PauliKind::kY);
    case LogicalOp::kZ:
      return pauli(PauliKind::kZ);
  }
  return DenseOperator(2);
}

DenseOperator logical_state(const BlochVector& r) {
  DenseOperator out = logical_pauli(LogicalOp::kI);
  out.add_scaled(r.x, logical_pauli(LogicalOp::kX));
  out.add_scaled(r.y, logical_pauli(LogicalOp::kY));
  out.add_scaled(r.z, logical_pauli(LogicalOp::kZ));
  return out;
}

std::array<StateVector, 2> singlet_states() {
  const double h = 0.5;
  const double s = 1.0 / std::sqrt(3.0);
  StateVector s1(16), s2(16);
  // (|01> - |10>)(|01> - |10>) / 2
  s1[basis_index("0101")] = h;
  s1[basis_index("0110")] = -h;
  s1[basis_index("1001")] = -h;
  s1[basis_index("1010")] = h;
  s2[basis_index("1100")] = s;
  s2[basis_index("0011")] = s;
  for (const char* bits : {"0101", "0110", "1001", "1010"})
    s2[basis_index(bits)] = -h * s;
  return {s1, s2};
}

EncodingScheme make_scheme(EncodingId id, int n_sites) {
  const int min_sites = id == EncodingId::kSinglet ? 8 : 2;
  if (n_sites < min_sites || n_sites > 12) {
    throw Error(ErrorKind::kInvalidArgument,
                "encoding " + std::string(encoding_name(id)) + " needs " +
                    std::to_string(min_sites) + " to 12 sites, got " +
                    std::to_string(n_sites));
  }
  EncodingScheme scheme;
  scheme.id = id;
  scheme.n_sites = n_sites;
  std::array<StateVector, 2> local;
  int width = 0;
  switch (id) {
    case EncodingId::kA:
      width = 1;
      local = {basis_state("0"), basis_state("1")};
      break;
    case EncodingId::kB:
      width = 2;
      local = {basis_state("10"), basis_state("01")};
      break;
    case EncodingId::kSinglet:
      width = 4;
      local = singlet_states();
      break;
  }
  scheme.sender_sites = site_range(1, width);
  scheme.receiver_sites = site_range(n_sites - width + 1, n_sites);
  for (int k = 0; k < 2; ++k)
    scheme.code_states[k] = pad_with_vacuum(local[k], n_sites);

  const std::size_t dim = std::size_t{1} << n_sites;
  for (LogicalOp a : {LogicalOp::kI, LogicalOp::kX, LogicalOp::kY,
                      LogicalOp::kZ}) {
    const DenseOperator p = logical_pauli(a);
    DenseOperator op(dim);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        if (p(k, l) == Complex{}) continue;
        op.add_scaled(p(k, l), outer(scheme.code_states[k],
                                     scheme.code_states[l]));
      }
    scheme.coding_ops[static_cast<int>(a)] = std::move(op);
  }

  if (id == EncodingId::kB) {
    ReadoutRule rule;
    const DenseOperator ii = kron(pauli(PauliKind::kI), pauli(PauliKind::kI));
    const DenseOperator zz = kron(pauli(PauliKind::kZ), pauli(PauliKind::kZ));
    rule.projector = Complex{2.0} * (ii - zz);
    rule.fail_state = Complex{0.5} * rule.projector;
    scheme.readout = std::move(rule);
  }
  return scheme;
}

DenseOperator encode(const EncodingScheme& scheme, const BlochVector& r) {
  if (!(r.norm() <= 1.0 + 1e-12)) {
    throw Error(ErrorKind::kBlochOutOfBall,
                "|r| = " + std::to_string(r.norm()) + " > 1");
  }
  DenseOperator rho = scheme.op(LogicalOp::kI);
  rho.add_scaled(r.x, scheme.op(LogicalOp::kX));
  rho.add_scaled(r.y, scheme.op(LogicalOp::kY));
  rho.add_scaled(r.z, scheme.op(LogicalOp::kZ));
  return rho;
}

ReceiverFrame receiver_frame(const EncodingScheme& scheme,
                             const ChainSpec& spec) {
  spec.validate();
  if (spec.n != scheme.n_sites) {
    throw Error(ErrorKind::kDimensionMismatch,
                "chain length does not match the encoding");
  }
  ReceiverFrame frame;
  frame.transfer_time = 0.5 * transfer_period(spec);
  const DenseOperator u =
      SpectralPropagator(build_hamiltonian(spec)).at(frame.transfer_time);
  const std::size_t width = std::size_t{1} << scheme.receiver_count();
  for (int k = 0; k < 2; ++k) {
    const StateVector moved = apply(u, scheme.code_states[k]);
    StateVector ket(moved.begin(), moved.begin() + width);
    const double weight = norm(ket);
    if (std::abs(weight * weight - 1.0) > 1e-6) {
      throw Error(ErrorKind::kInvalidArgument,
                  "chain does not deliver code state " + std::to_string(k) +
                      " to the receiver (weight " +
                      std::to_string(weight * weight) + ")");
    }
    frame.kets[k] = std::move(ket);
  }
  return frame;
}

DenseOperator decode_reduced(const EncodingScheme& scheme,
                             const ReceiverFrame& frame,
                             const DenseOperator& reduced) {
  if (reduced.dim() != (std::size_t{1} << scheme.receiver_count())) {
    throw Error(ErrorKind::kDimensionMismatch,
                "reduced operator does not live on the receiver sites");
  }
  const Complex total = trace(reduced);
  DenseOperator effective = reduced;
  if (scheme.readout) {
    const DenseOperator& p = scheme.readout->projector;
    effective = p * reduced * p;
    effective.add_scaled(total - trace(effective), scheme.readout->fail_state);
  }
  DenseOperator logical(2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      logical(k, l) = sandwich(frame.kets[k], effective, frame.kets[l]);
  // Leakage out of the code space reads as the maximally mixed state.
  const Complex leaked = total - trace(logical);
  logical(0, 0) += 0.5 * leaked;
  logical(1, 1) += 0.5 * leaked;
  return logical;
}

DenseOperator decode_linear(const EncodingScheme& scheme,
                            const ReceiverFrame& frame,
                            const DenseOperator& x) {
  if (x.dim() != (std::size_t{1} << scheme.n_sites)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "operator does not live on the encoded chain");
  }
  return decode_reduced(scheme, frame,
                        partial_trace_trailing(x, scheme.receiver_count()));
}

DenseOperator decode(const EncodingScheme& scheme, const ReceiverFrame& frame,
                     const DenseOperator& rho) {
  if (std::abs(trace(rho) - 1.0) > 1e-6) {
    throw Error(ErrorKind::kNonUnitTrace,
                "received state has trace " +
                    std::to_string(trace(rho).real()));
  }
  return decode_linear(scheme, frame, rho);
}

DenseOperator decode(const EncodingScheme& scheme, const ChainSpec& spec,
                     const DenseOperator& rho) {
  return decode(scheme, receiver_frame(scheme, spec), rho);
}

}  // namespace qst
