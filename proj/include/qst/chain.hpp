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

#include <vector>

#include "qst/operators.hpp"

namespace qst {

// xx chain: H = sum_i J_i (X_i X_{i+1} + Y_i Y_{i+1}) + sum_i B_i Z_i.
struct ChainSpec {
  int n = 0;
  std::vector<double> couplings;  // n - 1 entries
  std::vector<double> fields;     // n entries

  // Throws InvalidArgument on length mismatch or n < 2.
  void validate() const;
};

// Engineered perfect-transfer couplings J_i = sqrt(i (n - i)), uniform field.
// The proportionality constant is 1, which makes the transfer period 2 pi.
ChainSpec pst_spec(int n, double field);

// Constant couplings; generic chains of this kind do not mirror states.
ChainSpec uniform_spec(int n, double coupling, double field);

DenseOperator build_hamiltonian(const ChainSpec& spec);

// H restricted to the states with exactly one flipped spin, as an n x n
// row-major real symmetric matrix. Row k is the state with site k + 1 flipped.
std::vector<double> one_excitation_block(const ChainSpec& spec);

enum class SpectrumScope { kOneExcitation, kFull };

struct SpectrumReport {
  std::vector<double> energies;  // ascending
  double spacing = 0.0;          // E
  double offset = 0.0;           // E_0
  bool parity_ok = false;
  double max_spacing_error = 0.0;  // relative to the spacing
  std::vector<int> levels;         // n_i per energy
  std::vector<int> parities;       // mirror parity (+1 / -1, 0 if undefined)
};

/* Checks E_i = E_0 + E n_i together with mirror parity (-1)^(n_0 + n_i).

The one-excitation scope is the default and covers both encodings. The full
scope checks every magnetization sector separately against the
one-excitation spacing (sector offsets differ, which is the phase the
decoders correct). Throws DegenerateSpectrum when a degenerate level holds
both mirror parities. */
SpectrumReport verify_parity_matching(
    const ChainSpec& spec, double tol = 1e-9,
    SpectrumScope scope = SpectrumScope::kOneExcitation);

// tau = 2 pi / E for the one-excitation spectrum. Throws NotEquallySpaced
// when a gap deviates from the mean gap by more than tol (relative).
double transfer_period(const ChainSpec& spec, double tol = 1e-9);

// exp(-i H t) from one Hermitian eigendecomposition.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const DenseOperator& hamiltonian);

  DenseOperator at(double t) const;
  // U rho U^dagger with U = at(t).
  DenseOperator conjugate(const DenseOperator& rho, double t) const;

 private:
  EigenSystem eig_;
  DenseOperator vectors_dagger_;
};

/* Relative phase acquired by |10...0> against |00...0> over tau / 2, as the
2x2 correction diag(1, conj(c)) to apply on the receiver spin:

  U(tau/2) |10...0> = c * <00...0| U(tau/2) |00...0> * |0...01>. */
DenseOperator phase_correction(const ChainSpec& spec);

}  // namespace qst
