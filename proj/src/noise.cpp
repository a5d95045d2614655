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

#include "qst/noise.hpp"

#include <cmath>
#include <string>

#include "qst/error.hpp"

namespace qst {
namespace {

std::string site_label(std::string_view name, int site) {
  return std::string(name) + "[" + std::to_string(site) + "]";
}

double boltzmann(double beta_b) {
  return std::isinf(beta_b) ? 0.0 : std::exp(-beta_b);
}

}  // namespace

bool NoiseModel::is_trivial() const {
  for (const LindbladTerm& t : terms)
    if (t.rate > 0.0) return false;
  return true;
}

bool is_thermal(NoiseId id) {
  return id == NoiseId::kLocalThermal || id == NoiseId::kGlobalThermal;
}

NoiseModel make_noise(NoiseId id, double gamma, std::optional<double> beta_b,
                      int n_sites) {
  if (!(gamma >= 0.0) || std::isinf(gamma)) {
    throw Error(ErrorKind::kInvalidArgument,
                "gamma must be finite and non-negative");
  }
  if (n_sites < 1) {
    throw Error(ErrorKind::kInvalidArgument, "chain needs at least one site");
  }
  NoiseModel model;
  model.id = id;
  model.gamma = gamma;
  model.n_sites = n_sites;
  if (is_thermal(id)) {
    if (!beta_b || std::isnan(*beta_b)) {
      throw Error(ErrorKind::kThermalParamMissing,
                  std::string(noise_name(id)) + " needs betaB");
    }
    if (*beta_b < 0.0) {
      throw Error(ErrorKind::kInvalidArgument, "betaB must be >= 0");
    }
    model.beta_b = *beta_b;
  } else {
    model.beta_b = beta_b.value_or(0.0);
  }

  const DenseOperator x = pauli(PauliKind::kX);
  const DenseOperator y = pauli(PauliKind::kY);
  const DenseOperator z = pauli(PauliKind::kZ);
  const DenseOperator decay = pauli(PauliKind::kRaise);   // |0><1|
  const DenseOperator excite = pauli(PauliKind::kLower);  // |1><0|
  auto& terms = model.terms;

  switch (id) {
    case NoiseId::kNone:
      break;
    case NoiseId::kLocalTwirl:
      for (int i = 1; i <= n_sites; ++i) {
        terms.push_back({embed(x, SiteIndex(i), n_sites), gamma,
                         site_label("X", i)});
        terms.push_back({embed(y, SiteIndex(i), n_sites), gamma,
                         site_label("Y", i)});
        terms.push_back({embed(z, SiteIndex(i), n_sites), gamma,
                         site_label("Z", i)});
      }
      break;
    case NoiseId::kLocalThermal: {
      const double suppressed = gamma * boltzmann(model.beta_b);
      for (int i = 1; i <= n_sites; ++i) {
        terms.push_back({embed(excite, SiteIndex(i), n_sites), suppressed,
                         site_label("S-", i)});
        terms.push_back({embed(decay, SiteIndex(i), n_sites), gamma,
                         site_label("S+", i)});
      }
      break;
    }
    case NoiseId::kLocalDephase:
      for (int i = 1; i <= n_sites; ++i)
        terms.push_back({embed(z, SiteIndex(i), n_sites), gamma,
                         site_label("Z", i)});
      break;
    case NoiseId::kGlobalDephase:
      terms.push_back(
          {total_operator(PauliKind::kZ, n_sites), gamma, "sum Z"});
      break;
    case NoiseId::kGlobalThermal:
      terms.push_back(
          {total_operator(PauliKind::kRaise, n_sites), gamma, "sum S+"});
      terms.push_back({total_operator(PauliKind::kLower, n_sites),
                       gamma * boltzmann(model.beta_b), "sum S-"});
      break;
  }
  return model;
}

std::string_view noise_name(NoiseId id) {
  switch (id) {
    case NoiseId::kNone:
      return "none";
    case NoiseId::kLocalTwirl:
      return "twirl";
    case NoiseId::kLocalThermal:
      return "thermal-local";
    case NoiseId::kLocalDephase:
      return "dephase-local";
    case NoiseId::kGlobalDephase:
      return "dephase-global";
    case NoiseId::kGlobalThermal:
      return "thermal-global";
  }
  return "unknown";
}

NoiseId parse_noise(std::string_view name) {
  for (NoiseId id : {NoiseId::kNone, NoiseId::kLocalTwirl,
                     NoiseId::kLocalThermal, NoiseId::kLocalDephase,
                     NoiseId::kGlobalDephase, NoiseId::kGlobalThermal}) {
    if (noise_name(id) == name) return id;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown noise model '" + std::string(name) + "'");
}

}  // namespace qst
