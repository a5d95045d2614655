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


// Slow sweep-level property: fidelity does not grow with the noise rate.

#include <cmath>

#include "doctest.h"
#include "qst/harness.hpp"

namespace qst {

TEST_CASE("fidelity is non-increasing in gamma on the default grid") {
  for (NoiseId model : {NoiseId::kLocalTwirl, NoiseId::kLocalThermal,
                        NoiseId::kLocalDephase, NoiseId::kGlobalDephase,
                        NoiseId::kGlobalThermal}) {
    SweepConfig cfg;
    cfg.model = model;
    cfg.chain = pst_spec(6, 0.0);
    if (is_thermal(model))
      cfg.beta_grid = Grid{0.0, 6.0, 2, GridScale::kLinear, true};
    const std::vector<FidelityRecord> recs = sweep(cfg);
    for (std::size_t k = 1; k < recs.size(); ++k) {
      const FidelityRecord& prev = recs[k - 1];
      const FidelityRecord& cur = recs[k];
      REQUIRE(cur.error.empty());
      if (prev.encoding != cur.encoding || prev.beta_b != cur.beta_b) continue;
      CAPTURE(noise_name(model));
      CAPTURE(encoding_name(cur.encoding));
      CAPTURE(cur.beta_b);
      CAPTURE(cur.gamma);
      CHECK(cur.f <= prev.f + 1e-4);
    }
  }
}

}  // namespace qst
