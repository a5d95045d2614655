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

#include "doctest.h"
#include "qst/error.hpp"
#include "qst/noise.hpp"

namespace qst {

TEST_CASE("noise names round-trip") {
  for (NoiseId id : {NoiseId::kNone, NoiseId::kLocalTwirl,
                     NoiseId::kLocalThermal, NoiseId::kLocalDephase,
                     NoiseId::kGlobalDephase, NoiseId::kGlobalThermal})
    CHECK(parse_noise(noise_name(id)) == id);
  CHECK_THROWS_AS(parse_noise("bitflip"), Error);
}

TEST_CASE("term catalog") {
  const int n = 3;
  CHECK(make_noise(NoiseId::kNone, 1.0, {}, n).terms.empty());
  CHECK(make_noise(NoiseId::kNone, 1.0, {}, n).is_trivial());
  CHECK(make_noise(NoiseId::kLocalTwirl, 1.0, {}, n).terms.size() == 9);
  CHECK(make_noise(NoiseId::kLocalDephase, 1.0, {}, n).terms.size() == 3);
  CHECK(make_noise(NoiseId::kGlobalDephase, 1.0, {}, n).terms.size() == 1);
  CHECK(make_noise(NoiseId::kLocalThermal, 1.0, 0.5, n).terms.size() == 6);
  CHECK(make_noise(NoiseId::kGlobalThermal, 1.0, 0.5, n).terms.size() == 2);
  CHECK(make_noise(NoiseId::kLocalTwirl, 0.0, {}, n).is_trivial());

  const NoiseModel g = make_noise(NoiseId::kGlobalDephase, 0.7, {}, n);
  CHECK(max_abs_diff(g.terms[0].op, total_operator(PauliKind::kZ, n)) == 0);
  CHECK(g.terms[0].rate == 0.7);
}

TEST_CASE("thermal rates") {
  const NoiseModel m = make_noise(NoiseId::kLocalThermal, 2.0, 1.5, 2);
  for (const LindbladTerm& t : m.terms) {
    // the decaying jump |0><1| has the full rate
    const bool decays = std::abs(t.op(0, 2)) > 0 || std::abs(t.op(0, 1)) > 0;
    CHECK(t.rate == doctest::Approx(decays ? 2.0 : 2.0 * std::exp(-1.5)));
  }
  const double inf = std::numeric_limits<double>::infinity();
  const NoiseModel cold = make_noise(NoiseId::kGlobalThermal, 2.0, inf, 2);
  CHECK(cold.terms[1].rate == 0.0);
  CHECK(cold.terms[0].rate == 2.0);
  const NoiseModel hot = make_noise(NoiseId::kGlobalThermal, 2.0, 0.0, 2);
  CHECK(hot.terms[1].rate == 2.0);
}

TEST_CASE("argument errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  CHECK(kind([] { make_noise(NoiseId::kLocalThermal, 1.0, {}, 3); }) ==
        ErrorKind::kThermalParamMissing);
  CHECK(kind([] { make_noise(NoiseId::kGlobalThermal, 1.0, {}, 3); }) ==
        ErrorKind::kThermalParamMissing);
  CHECK(kind([] { make_noise(NoiseId::kLocalTwirl, -1.0, {}, 3); }) ==
        ErrorKind::kInvalidArgument);
  CHECK(kind([] { make_noise(NoiseId::kLocalThermal, 1.0, -1.0, 3); }) ==
        ErrorKind::kInvalidArgument);
  // betaB is optional elsewhere
  CHECK_NOTHROW(make_noise(NoiseId::kLocalDephase, 1.0, {}, 3));
}

}  // namespace qst
