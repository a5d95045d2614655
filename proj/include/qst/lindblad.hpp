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
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qst/chain.hpp"
#include "qst/error.hpp"
#include "qst/noise.hpp"
#include "qst/operators.hpp"

namespace qst {

enum class Method { kRk4, kSplitStep };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);  // "rk4" | "split"

// See LindbladGenerator.
enum class GeneratorStrategy { kAuto, kRowProducts, kSuperoperator };

struct Tolerances {
  double trace = 1e-8;
  double hermiticity = 1e-8;
  double positivity = 1e-7;
};

struct IntegratorConfig {
  Method method = Method::kRk4;
  // Steps per reference_time; a run to time t uses
  // ceil(steps_per_half_period * t / reference_time) steps.
  int steps_per_half_period = 600;
  // tau / 2 of the perfect-transfer chain with unit coupling constant.
  double reference_time = std::numbers::pi;
  Tolerances tolerances;
  GeneratorStrategy strategy = GeneratorStrategy::kAuto;

  // Throws InvalidArgument when steps_per_half_period < 30.
  void validate() const;
};

struct Diagnostics {
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;  // NaN for operator (non-state) runs
  double hermiticity_defect = 0.0;
  int steps_used = 0;
};

struct EvolutionResult {
  DenseOperator rho;
  Diagnostics diagnostics;
};

class ToleranceViolated : public Error {
 public:
  ToleranceViolated(const std::string& what, Diagnostics diagnostics)
      : Error(ErrorKind::kToleranceViolated, what),
        diagnostics_(diagnostics) {}
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

// Row-compressed copy of a dense operator with exact zeros dropped.
class SparseRows {
 public:
  SparseRows() = default;
  explicit SparseRows(const DenseOperator& op);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  // Takes ownership of already compressed rows.
  SparseRows(std::size_t dim, std::vector<std::uint32_t> row_start,
             std::vector<std::uint32_t> columns, std::vector<Complex> values);

  // out (+)= alpha * S * x for dense row-major x.
  void multiply(Complex alpha, const DenseOperator& x, DenseOperator& out,
                bool accumulate) const;
  // y (+)= S * x for vectors of length dim.
  void multiply_vector(const Complex* x, Complex* y, bool accumulate) const;

  // Largest number of stored entries in one row.
  std::size_t max_row_entries() const;
  // (column, value) pairs of row r.
  std::span<const std::uint32_t> row_columns(std::size_t r) const {
    return {columns_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }
  std::span<const Complex> row_values(std::size_t r) const {
    return {values_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> row_start_;
  std::vector<std::uint32_t> columns_;
  std::vector<Complex> values_;
};

/* Action of the Lindblad generator

  L(rho) = -i [H, rho] + sum_k g_k (K_k rho K_k^+ - {K_k^+ K_k, rho} / 2),

The anticommutators fold into H_eff = H - (i/2) sum_k g_k K_k^+ K_k, so

  L(rho) = -i H_eff rho + i (H_eff rho^+)^+ + sum_k g_k K_k (K_k rho^+)^+.

Two evaluation strategies share that form:

  kRowProducts    every product is a run of row AXPYs with row-compressed
                  operators; memory stays at a few dim x dim buffers.
  kSuperoperator  H_eff and every jump are assembled into one compressed
                  dim^2 x dim^2 matrix acting on vec(rho). A jump with m
                  entries per row adds up to m^2 entries per superoperator
                  row, so collective jumps such as sum S+ cost the most.

kAuto takes the superoperator up to 8 sites unless a jump has more than one
entry in some row. Zero-rate terms are skipped. */
class LindbladGenerator {
 public:
  using Strategy = GeneratorStrategy;

  LindbladGenerator(const DenseOperator& hamiltonian, const NoiseModel& noise,
                    Strategy strategy = Strategy::kAuto);

  std::size_t dim() const noexcept { return dim_; }
  bool has_dissipation() const noexcept { return dissipative_; }
  Strategy strategy() const noexcept { return strategy_; }

  // Per-thread scratch space for apply().
  struct Workspace {
    DenseOperator adjoint;
    DenseOperator product;
    DenseOperator product_adjoint;
  };
  Workspace make_workspace() const;

  // out = L(rho). out must not alias rho.
  void apply(const DenseOperator& rho, DenseOperator& out,
             Workspace& ws) const;
  void apply(const DenseOperator& rho, DenseOperator& out) const;

 private:
  struct Jump {
    SparseRows op;
    double rate;
  };
  std::size_t dim_;
  Strategy strategy_;
  bool dissipative_ = false;
  SparseRows effective_;     // row path only
  SparseRows superoperator_;  // superoperator path only
  std::vector<Jump> jumps_;  // row path only
};

// L(rho) for the given Hamiltonian and noise model.
DenseOperator lindblad_rhs(const DenseOperator& rho,
                           const DenseOperator& hamiltonian,
                           const NoiseModel& noise);

/* Time stepper shared by every run on one (H, noise, config).

RK4 takes classic fourth-order steps on the full generator. Split-step
alternates exact unitary sub-steps exp(-i H h) from a single spectral
decomposition with fourth-order dissipator sub-steps, in Strang order. A
noise model without positive rates short-circuits to the spectral propagator.
Results are re-Hermitized once, at the end. */
class Integrator {
 public:
  Integrator(const DenseOperator& hamiltonian, const NoiseModel& noise,
             const IntegratorConfig& config);
  ~Integrator();
  Integrator(Integrator&&) noexcept;
  Integrator& operator=(Integrator&&) noexcept;

  // rho0 must be a density matrix. Checks trace drift and positivity at the
  // end and throws ToleranceViolated past the configured limits.
  EvolutionResult evolve_state(const DenseOperator& rho0, double t) const;

  // Any Hermitian operator; only trace conservation is checked.
  EvolutionResult evolve_operator(const DenseOperator& a0, double t) const;

  int steps_for(double t) const;
  const IntegratorConfig& config() const noexcept { return config_; }

 private:
  struct Impl;
  DenseOperator run(const DenseOperator& a0, double t, Diagnostics& diag) const;

  IntegratorConfig config_;
  std::unique_ptr<Impl> impl_;
};

EvolutionResult evolve(const DenseOperator& rho0,
                       const DenseOperator& hamiltonian,
                       const NoiseModel& noise, double t,
                       const IntegratorConfig& config = {});

EvolutionResult evolve_operator(const DenseOperator& a0,
                                const DenseOperator& hamiltonian,
                                const NoiseModel& noise, double t,
                                const IntegratorConfig& config = {});

}  // namespace qst
