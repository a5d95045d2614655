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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qst/chain.hpp"
#include "qst/encodings.hpp"
#include "qst/fidelity.hpp"
#include "qst/lindblad.hpp"
#include "qst/noise.hpp"

namespace qst {

enum class GridScale { kLinear, kLog };

struct Grid {
  double min = 0.0;
  double max = 1.0;
  int points = 1;
  GridScale scale = GridScale::kLinear;
  // Adds +inf after the finite points (betaB only).
  bool append_infinity = false;

  // Throws InvalidArgument for points < 1, min >= max with points > 1, or a
  // non-positive bound on a log grid.
  void validate() const;
  std::vector<double> values() const;
};

// 24 log points on [0.01, 10], in units of 1/tau.
Grid default_gamma_grid();
// 12 points on [0, 6] and +inf.
Grid default_beta_grid();

enum class OutputFormat { kCsv, kJson };

struct SweepConfig {
  NoiseId model = NoiseId::kLocalTwirl;
  std::vector<EncodingId> encodings = {EncodingId::kA, EncodingId::kB};
  ChainSpec chain = pst_spec(6, 0.0);
  Grid gamma_grid = default_gamma_grid();
  // Thermal models need it; it is ignored by the others.
  std::optional<Grid> beta_grid;
  IntegratorConfig integrator;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: one per hardware thread
  std::string output_path;  // empty: stdout
  OutputFormat format = OutputFormat::kCsv;

  void validate() const;
};

/* One record per (encoding, betaB, gamma), in that nesting order. A point
whose evaluation throws becomes a record with NaN fidelities, the message in
`error` and whatever diagnostics were available. */
std::vector<FidelityRecord> sweep(const SweepConfig& config);

// CSV columns: model, encoding, n, gamma, beta_b, f, f_x, f_y, f_z,
// trace_drift, min_eig. Reals use %.17g, so values round-trip exactly.
void write_csv(std::ostream& out, const std::vector<FidelityRecord>& records);
std::vector<FidelityRecord> read_csv(std::istream& in);
// One JSON object per line with the CSV keys plus error when set.
// Non-finite reals are written as the strings "inf", "-inf" and "nan".
void write_json_lines(std::ostream& out,
                      const std::vector<FidelityRecord>& records);
std::vector<FidelityRecord> read_json_lines(std::istream& in);

void write_records(const std::vector<FidelityRecord>& records,
                   const std::string& path, OutputFormat format);

struct CrossoverResult {
  double gamma = 0.0;  // units of 1/tau
  double f_a = 0.0;
  double f_b = 0.0;
  double f = 0.0;      // (f_a + f_b) / 2
  int evaluations = 0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
};

/* Bisection in log gamma for F^(a) = F^(b). Stops once |F^(a) - F^(b)| <
f_tolerance and the bracket has shrunk below relative width
gamma_tolerance. Throws NoSignChange when the difference has one sign at
both ends. */
CrossoverResult find_crossover(NoiseId model, const ChainSpec& chain,
                               double gamma_low, double gamma_high,
                               std::optional<double> beta_b = std::nullopt,
                               const IntegratorConfig& config = {},
                               double f_tolerance = 1e-4,
                               double gamma_tolerance = 1e-3);

struct ContourPoint {
  double gamma = 0.0;
  double beta_b = 0.0;
  double f = 0.0;
};

struct ContourResult {
  double level = 2.0 / 3.0;
  double bracket_tolerance = 1e-4;
  std::vector<ContourPoint> points;
  std::vector<double> unbracketed;  // betaB values without a crossing
};

// gamma with F(gamma) = level for one betaB, by bisection in log gamma on
// [gamma_low, gamma_high]. Throws LevelNotBracketed.
ContourPoint threshold_gamma(const TransferSetup& setup, NoiseId model,
                             double beta_b, double level, double gamma_low,
                             double gamma_high,
                             const IntegratorConfig& config = {},
                             double tolerance = 1e-4);

// Threshold line F = level across betaB. Requires a thermal model.
ContourResult trace_threshold_contour(NoiseId model, EncodingId encoding,
                                      const ChainSpec& chain, double level,
                                      const std::vector<double>& beta_values,
                                      double gamma_low = 0.01,
                                      double gamma_high = 10.0,
                                      const IntegratorConfig& config = {},
                                      double tolerance = 1e-4);

struct SingletReport {
  std::vector<FidelityRecord> records;  // one per gamma
  // max |rho(tau/2) - rho(0)| over the code states and their coherence,
  // with the chain Hamiltonian switched off, at the largest gamma.
  double static_deviation = 0.0;
};

// Singlet code on a chain of n >= 8 sites under the collective thermal
// model. gamma in units of 1/tau.
SingletReport singlet_decay_experiment(const ChainSpec& chain,
                                       const std::vector<double>& gammas,
                                       double beta_b,
                                       const IntegratorConfig& config = {});

struct SlopeFit {
  double slope = 0.0;      // dF / d(gamma tau)
  double intercept = 0.0;
  double r_squared = 0.0;  // NaN when F is constant
  std::vector<double> gammas;
  std::vector<double> fidelities;
};

// Least-squares line through F(gamma) under collective dephasing.
SlopeFit global_dephase_slope(EncodingId encoding, const ChainSpec& chain,
                              const std::vector<double>& gammas,
                              const IntegratorConfig& config = {});

// JSON forms. ChainSpec: {"n", "couplings", "fields"}; a bare {"n"} or
// {"n", "field"} means the perfect-transfer chain.
ChainSpec chain_from_json(const std::string& text);
std::string chain_to_json(const ChainSpec& spec);

/* SweepConfig from JSON, missing keys keeping their defaults:

  {"model": "twirl", "encodings": ["a", "b"], "n": 6, "chain": {...},
   "gamma": {"min": 0.01, "max": 10, "points": 24, "scale": "log"},
   "beta_b": {"min": 0, "max": 6, "points": 12, "infinity": true} or 3.0,
   "method": "rk4", "steps": 600, "seed": 1, "threads": 0,
   "out": "fid.csv", "format": "csv"} */
SweepConfig sweep_config_from_json(const std::string& text);

}  // namespace qst
