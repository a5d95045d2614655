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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qst/operators.hpp"

namespace qst {

enum class NoiseId {
  kNone,
  kLocalTwirl,
  kLocalThermal,
  kLocalDephase,
  kGlobalDephase,
  kGlobalThermal,
};

struct LindbladTerm {
  DenseOperator op;  // K
  double rate = 0.0;  // gamma_i
  std::string label;
};

/* Catalog of dissipators. Rates are in inverse simulation time; the harness
converts from gamma * tau.

Thermal models pair each de-exciting jump |0><1| (toward the fully magnetized
|00...0>, rate gamma) with an exciting jump |1><0| suppressed by the Boltzmann
factor exp(-betaB). With the half-spin matrices, |0><1| is S+ = X + iY. At
betaB = +inf the exciting rates are exactly zero. */
struct NoiseModel {
  NoiseId id = NoiseId::kNone;
  double gamma = 0.0;
  double beta_b = 0.0;
  int n_sites = 0;
  std::vector<LindbladTerm> terms;

  // True when no term has a positive rate.
  bool is_trivial() const;
};

bool is_thermal(NoiseId id);

// beta_b is required for the thermal models and ignored otherwise.
NoiseModel make_noise(NoiseId id, double gamma, std::optional<double> beta_b,
                      int n_sites);

// CLI spellings: none, twirl, thermal-local, dephase-local, dephase-global,
// thermal-global.
std::string_view noise_name(NoiseId id);
NoiseId parse_noise(std::string_view name);

}  // namespace qst
