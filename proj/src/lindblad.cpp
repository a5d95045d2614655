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

#include "qst/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qst {
namespace {

constexpr std::size_t kBlock = 32;

// out = a^dagger
void adjoint_into(const DenseOperator& a, DenseOperator& out) {
  const std::size_t n = a.dim();
  for (std::size_t r0 = 0; r0 < n; r0 += kBlock)
    for (std::size_t c0 = 0; c0 < n; c0 += kBlock) {
      const std::size_t r1 = std::min(n, r0 + kBlock);
      const std::size_t c1 = std::min(n, c0 + kBlock);
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) out(c, r) = std::conj(a(r, c));
    }
}

// out += alpha * b^dagger, alpha purely imaginary or real.
void add_adjoint(Complex alpha, const DenseOperator& b, DenseOperator& out) {
  const std::size_t n = b.dim();
  for (std::size_t r0 = 0; r0 < n; r0 += kBlock)
    for (std::size_t c0 = 0; c0 < n; c0 += kBlock) {
      const std::size_t r1 = std::min(n, r0 + kBlock);
      const std::size_t c1 = std::min(n, c0 + kBlock);
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c)
          out(c, r) += alpha * std::conj(b(r, c));
    }
}

void require_dim(const DenseOperator& a, std::size_t dim, const char* what) {
  if (a.dim() != dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + " has dimension " +
                    std::to_string(a.dim()) + ", expected " +
                    std::to_string(dim));
  }
}

double trace_real_drift(const DenseOperator& a, Complex initial) {
  return std::abs(trace(a) - initial);
}

}  // namespace

std::string_view method_name(Method m) {
  return m == Method::kRk4 ? "rk4" : "split";
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::kRk4;
  if (name == "split") return Method::kSplitStep;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown method '" + std::string(name) + "'");
}

void IntegratorConfig::validate() const {
  if (steps_per_half_period < 30) {
    throw Error(ErrorKind::kInvalidArgument,
                "at least 30 steps per half period are required");
  }
  if (!(reference_time > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "reference time must be > 0");
  }
}

SparseRows::SparseRows(const DenseOperator& op) : dim_(op.dim()) {
  row_start_.reserve(dim_ + 1);
  row_start_.push_back(0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex v = op(r, c);
      if (v == Complex{}) continue;
      columns_.push_back(static_cast<std::uint32_t>(c));
      values_.push_back(v);
    }
    row_start_.push_back(static_cast<std::uint32_t>(values_.size()));
  }
}

SparseRows::SparseRows(std::size_t dim, std::vector<std::uint32_t> row_start,
                       std::vector<std::uint32_t> columns,
                       std::vector<Complex> values)
    : dim_(dim),
      row_start_(std::move(row_start)),
      columns_(std::move(columns)),
      values_(std::move(values)) {}

void SparseRows::multiply(Complex alpha, const DenseOperator& x,
                          DenseOperator& out, bool accumulate) const {
  const auto& k = kernels::active();
  const std::size_t n = dim_;
  for (std::size_t r = 0; r < n; ++r) {
    Complex* dst = out.data() + r * n;
    if (!accumulate) std::fill(dst, dst + n, Complex{});
    for (std::uint32_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
      k.axpy(n, alpha * values_[e], x.data() + columns_[e] * n, dst);
    }
  }
}

void SparseRows::multiply_vector(const Complex* x, Complex* y,
                                 bool accumulate) const {
  kernels::active().csr_multiply(dim_, row_start_.data(), columns_.data(),
                                 values_.data(), x, y, accumulate);
}

std::size_t SparseRows::max_row_entries() const {
  std::size_t widest = 0;
  for (std::size_t r = 0; r < dim_; ++r)
    widest = std::max<std::size_t>(widest, row_start_[r + 1] - row_start_[r]);
  return widest;
}

namespace {

struct Entry {
  std::uint32_t column;
  Complex value;
};

/* Rows of the superoperator on vec(rho), index r * dim + c:

  -i H_eff[r,k] rho[k,c] + i conj(H_eff[c,k]) rho[r,k]
      + sum_j g_j K_j[r,a] conj(K_j[c,b]) rho[a,b]

Duplicate columns are merged; entries that cancel exactly are dropped. */
SparseRows assemble_superoperator(const SparseRows& effective,
                                  const std::vector<const SparseRows*>& ops,
                                  const std::vector<double>& rates) {
  const std::size_t dim = effective.dim();
  const std::size_t rows = dim * dim;
  if (rows > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::kInvalidArgument, "superoperator too large");
  }
  std::vector<std::uint32_t> row_start;
  std::vector<std::uint32_t> columns;
  std::vector<Complex> values;
  row_start.reserve(rows + 1);
  row_start.push_back(0);
  std::vector<Entry> scratch;
  const Complex minus_i{0.0, -1.0};
  const Complex plus_i{0.0, 1.0};
  for (std::size_t r = 0; r < dim; ++r) {
    const auto hr_cols = effective.row_columns(r);
    const auto hr_vals = effective.row_values(r);
    for (std::size_t c = 0; c < dim; ++c) {
      scratch.clear();
      for (std::size_t e = 0; e < hr_cols.size(); ++e)
        scratch.push_back(
            {static_cast<std::uint32_t>(hr_cols[e] * dim + c),
             minus_i * hr_vals[e]});
      const auto hc_cols = effective.row_columns(c);
      const auto hc_vals = effective.row_values(c);
      for (std::size_t e = 0; e < hc_cols.size(); ++e)
        scratch.push_back(
            {static_cast<std::uint32_t>(r * dim + hc_cols[e]),
             plus_i * std::conj(hc_vals[e])});
      for (std::size_t j = 0; j < ops.size(); ++j) {
        const auto kr_cols = ops[j]->row_columns(r);
        const auto kr_vals = ops[j]->row_values(r);
        const auto kc_cols = ops[j]->row_columns(c);
        const auto kc_vals = ops[j]->row_values(c);
        for (std::size_t a = 0; a < kr_cols.size(); ++a)
          for (std::size_t b = 0; b < kc_cols.size(); ++b)
            scratch.push_back(
                {static_cast<std::uint32_t>(kr_cols[a] * dim + kc_cols[b]),
                 rates[j] * kr_vals[a] * std::conj(kc_vals[b])});
      }
      std::sort(scratch.begin(), scratch.end(),
                [](const Entry& a, const Entry& b) {
                  return a.column < b.column;
                });
      for (std::size_t e = 0; e < scratch.size();) {
        Complex sum{};
        const std::uint32_t col = scratch[e].column;
        for (; e < scratch.size() && scratch[e].column == col; ++e)
          sum += scratch[e].value;
        if (sum == Complex{}) continue;
        columns.push_back(col);
        values.push_back(sum);
      }
      row_start.push_back(static_cast<std::uint32_t>(values.size()));
    }
  }
  return SparseRows(rows, std::move(row_start), std::move(columns),
                    std::move(values));
}

}  // namespace

LindbladGenerator::LindbladGenerator(const DenseOperator& hamiltonian,
                                     const NoiseModel& noise,
                                     Strategy strategy)
    : dim_(hamiltonian.dim()), strategy_(strategy) {
  if (strategy_ == Strategy::kAuto) {
    // Collective jumps are cheaper as row products: their superoperator rows
    // get long and the whole matrix stops fitting in cache.
    bool collective = false;
    for (const LindbladTerm& term : noise.terms)
      if (term.rate > 0.0 && SparseRows(term.op).max_row_entries() > 1)
        collective = true;
    strategy_ = dim_ <= 256 && !collective ? Strategy::kSuperoperator
                                           : Strategy::kRowProducts;
  }
  DenseOperator effective = hamiltonian;
  const Complex minus_half_i{0.0, -0.5};
  std::vector<SparseRows> local_ops;
  std::vector<double> local_rates;
  for (const LindbladTerm& term : noise.terms) {
    require_dim(term.op, dim_, "Lindblad operator");
    if (!(term.rate > 0.0)) continue;
    dissipative_ = true;
    const DenseOperator kdk = dagger(term.op) * term.op;
    effective.add_scaled(minus_half_i * term.rate, kdk);
    SparseRows op(term.op);
    if (strategy_ == Strategy::kSuperoperator) {
      local_ops.push_back(std::move(op));
      local_rates.push_back(term.rate);
    } else {
      jumps_.push_back({std::move(op), term.rate});
    }
  }
  effective_ = SparseRows(effective);
  if (strategy_ == Strategy::kSuperoperator) {
    std::vector<const SparseRows*> ptrs;
    for (const SparseRows& op : local_ops) ptrs.push_back(&op);
    superoperator_ = assemble_superoperator(effective_, ptrs, local_rates);
  }
}

LindbladGenerator::Workspace LindbladGenerator::make_workspace() const {
  return {DenseOperator(dim_), DenseOperator(dim_), DenseOperator(dim_)};
}

void LindbladGenerator::apply(const DenseOperator& rho, DenseOperator& out,
                              Workspace& ws) const {
  require_dim(rho, dim_, "state");
  require_dim(out, dim_, "output");
  const Complex minus_i{0.0, -1.0};
  const Complex plus_i{0.0, 1.0};

  if (strategy_ == Strategy::kSuperoperator) {
    superoperator_.multiply_vector(rho.data(), out.data(), false);
    if (jumps_.empty()) return;
    adjoint_into(rho, ws.adjoint);
  } else {
    adjoint_into(rho, ws.adjoint);
    // -i H_eff rho
    effective_.multiply(minus_i, rho, out, false);
    // + i rho H_eff^+ = + i (H_eff rho^+)^+
    effective_.multiply(1.0, ws.adjoint, ws.product, false);
    add_adjoint(plus_i, ws.product, out);
  }
  // + g K rho K^+ = g K (K rho^+)^+
  for (const Jump& jump : jumps_) {
    jump.op.multiply(1.0, ws.adjoint, ws.product, false);
    adjoint_into(ws.product, ws.product_adjoint);  // rho K^+
    jump.op.multiply(jump.rate, ws.product_adjoint, out, true);
  }
}

void LindbladGenerator::apply(const DenseOperator& rho,
                              DenseOperator& out) const {
  Workspace ws = make_workspace();
  apply(rho, out, ws);
}

DenseOperator lindblad_rhs(const DenseOperator& rho,
                           const DenseOperator& hamiltonian,
                           const NoiseModel& noise) {
  require_dim(rho, hamiltonian.dim(), "state");
  const LindbladGenerator generator(hamiltonian, noise);
  DenseOperator out(rho.dim());
  generator.apply(rho, out);
  return out;
}

struct Integrator::Impl {
  Impl(const DenseOperator& h, const NoiseModel& noise,
       const IntegratorConfig& config)
      : dim(h.dim()), trivial(noise.is_trivial()), full(h, noise, config.strategy) {
    if (trivial || config.method == Method::kSplitStep) propagator.emplace(h);
    if (!trivial && config.method == Method::kSplitStep)
      dissipator.emplace(DenseOperator(h.dim()), noise, config.strategy);
  }

  std::size_t dim;
  bool trivial;
  LindbladGenerator full;
  std::optional<LindbladGenerator> dissipator;
  std::optional<SpectralPropagator> propagator;
};

Integrator::Integrator(const DenseOperator& hamiltonian,
                       const NoiseModel& noise, const IntegratorConfig& config)
    : config_(config) {
  config_.validate();
  if (noise.n_sites != 0 && noise.n_sites != hamiltonian.num_sites() &&
      !noise.terms.empty()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "noise model built for a different chain length");
  }
  impl_ = std::make_unique<Impl>(hamiltonian, noise, config_);
}

Integrator::~Integrator() = default;
Integrator::Integrator(Integrator&&) noexcept = default;
Integrator& Integrator::operator=(Integrator&&) noexcept = default;

int Integrator::steps_for(double t) const {
  const double ratio =
      config_.steps_per_half_period * std::abs(t) / config_.reference_time;
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

namespace {

// One classic RK4 step of size h on y, in place.
void rk4_step(const LindbladGenerator& g, double h, DenseOperator& y,
              DenseOperator& k, DenseOperator& stage, DenseOperator& acc,
              LindbladGenerator::Workspace& ws) {
  const auto& kern = kernels::active();
  const std::size_t n = y.size();
  g.apply(y, k, ws);
  kern.add_scaled(n, y.data(), h / 6.0, k.data(), acc.data());
  kern.add_scaled(n, y.data(), h / 2.0, k.data(), stage.data());
  g.apply(stage, k, ws);
  kern.axpy(n, h / 3.0, k.data(), acc.data());
  kern.add_scaled(n, y.data(), h / 2.0, k.data(), stage.data());
  g.apply(stage, k, ws);
  kern.axpy(n, h / 3.0, k.data(), acc.data());
  kern.add_scaled(n, y.data(), h, k.data(), stage.data());
  g.apply(stage, k, ws);
  kern.add_scaled(n, acc.data(), h / 6.0, k.data(), y.data());
}

}  // namespace

DenseOperator Integrator::run(const DenseOperator& a0, double t,
                              Diagnostics& diag) const {
  require_dim(a0, impl_->dim, "initial operator");
  const Complex initial_trace = trace(a0);
  diag = Diagnostics{};
  if (t == 0.0) {
    diag.hermiticity_defect = hermiticity_defect(a0);
    return hermitize(a0);
  }
  if (impl_->trivial) {
    DenseOperator out = impl_->propagator->conjugate(a0, t);
    diag.max_trace_drift = trace_real_drift(out, initial_trace);
    diag.hermiticity_defect = hermiticity_defect(out);
    return hermitize(out);
  }

  const int steps = steps_for(t);
  const double h = t / steps;
  diag.steps_used = steps;
  DenseOperator y = a0;
  DenseOperator k(impl_->dim);
  DenseOperator stage(impl_->dim);
  DenseOperator acc(impl_->dim);
  LindbladGenerator::Workspace ws = impl_->full.make_workspace();

  if (config_.method == Method::kRk4) {
    for (int s = 0; s < steps; ++s) {
      rk4_step(impl_->full, h, y, k, stage, acc, ws);
      diag.max_trace_drift =
          std::max(diag.max_trace_drift, trace_real_drift(y, initial_trace));
    }
  } else {
    const DenseOperator u_half = impl_->propagator->at(0.5 * h);
    const DenseOperator u_half_dag = dagger(u_half);
    const DenseOperator u_full = impl_->propagator->at(h);
    const DenseOperator u_full_dag = dagger(u_full);
    y = u_half * y * u_half_dag;
    for (int s = 0; s < steps; ++s) {
      rk4_step(*impl_->dissipator, h, y, k, stage, acc, ws);
      if (s + 1 < steps) {
        y = u_full * y * u_full_dag;
      } else {
        y = u_half * y * u_half_dag;
      }
      diag.max_trace_drift =
          std::max(diag.max_trace_drift, trace_real_drift(y, initial_trace));
    }
  }
  diag.hermiticity_defect = hermiticity_defect(y);
  return hermitize(y);
}

EvolutionResult Integrator::evolve_state(const DenseOperator& rho0,
                                         double t) const {
  const Tolerances& tol = config_.tolerances;
  if (std::abs(trace(rho0) - 1.0) > 1e-6) {
    throw Error(ErrorKind::kNonUnitTrace, "initial state is not normalized");
  }
  if (hermiticity_defect(rho0) > 1e-10) {
    throw Error(ErrorKind::kInvalidArgument, "initial state is not Hermitian");
  }
  if (min_eigenvalue(rho0) < -tol.positivity) {
    throw Error(ErrorKind::kInvalidArgument,
                "initial state is not positive semidefinite");
  }
  EvolutionResult result;
  result.rho = run(rho0, t, result.diagnostics);
  result.diagnostics.min_eigenvalue = min_eigenvalue(result.rho);
  const Diagnostics& d = result.diagnostics;
  if (d.max_trace_drift > tol.trace) {
    throw ToleranceViolated(
        "trace drift " + std::to_string(d.max_trace_drift), d);
  }
  if (d.min_eigenvalue < -tol.positivity) {
    throw ToleranceViolated(
        "negative eigenvalue " + std::to_string(d.min_eigenvalue), d);
  }
  if (d.hermiticity_defect > tol.hermiticity) {
    throw ToleranceViolated(
        "hermiticity defect " + std::to_string(d.hermiticity_defect), d);
  }
  return result;
}

EvolutionResult Integrator::evolve_operator(const DenseOperator& a0,
                                            double t) const {
  if (hermiticity_defect(a0) > 1e-10) {
    throw Error(ErrorKind::kInvalidArgument, "operator is not Hermitian");
  }
  EvolutionResult result;
  result.rho = run(a0, t, result.diagnostics);
  result.diagnostics.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  const Diagnostics& d = result.diagnostics;
  const Tolerances& tol = config_.tolerances;
  if (d.max_trace_drift > tol.trace) {
    throw ToleranceViolated(
        "trace drift " + std::to_string(d.max_trace_drift), d);
  }
  if (d.hermiticity_defect > tol.hermiticity) {
    throw ToleranceViolated(
        "hermiticity defect " + std::to_string(d.hermiticity_defect), d);
  }
  return result;
}

EvolutionResult evolve(const DenseOperator& rho0,
                       const DenseOperator& hamiltonian,
                       const NoiseModel& noise, double t,
                       const IntegratorConfig& config) {
  return Integrator(hamiltonian, noise, config).evolve_state(rho0, t);
}

EvolutionResult evolve_operator(const DenseOperator& a0,
                                const DenseOperator& hamiltonian,
                                const NoiseModel& noise, double t,
                                const IntegratorConfig& config) {
  return Integrator(hamiltonian, noise, config).evolve_operator(a0, t);
}

}  // namespace qst
