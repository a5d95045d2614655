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

#include "qst/chain.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qst/error.hpp"

namespace qst {
namespace {

struct LevelFit {
  double spacing = 0.0;
  double offset = 0.0;
  std::vector<int> levels;
  double max_error = 0.0;
};

double mean_gap(const std::vector<double>& sorted) {
  if (sorted.size() < 2) return 0.0;
  return (sorted.back() - sorted.front()) /
         static_cast<double>(sorted.size() - 1);
}

LevelFit fit_levels(const std::vector<double>& sorted, double spacing) {
  LevelFit fit;
  fit.spacing = spacing;
  fit.offset = sorted.empty() ? 0.0 : sorted.front();
  for (double e : sorted) {
    const double x = spacing > 0.0 ? (e - fit.offset) / spacing : 0.0;
    const int level = static_cast<int>(std::lround(x));
    fit.levels.push_back(level);
    if (spacing > 0.0) {
      fit.max_error = std::max(fit.max_error, std::abs(x - level));
    }
  }
  return fit;
}

/* Mirror parities of eigenvectors sharing one fitted level.

`vectors` holds eigenvectors as columns over a basis closed under the mirror
permutation `mirror_of`. Within a degenerate group the mirror is diagonalized;
an eigenvalue within 1e-6 of +-1 gives that parity, anything else yields 0. */
std::vector<int> group_parities(const Eigen::MatrixXd& vectors,
                                const std::vector<int>& members,
                                const std::vector<std::size_t>& mirror_of) {
  const auto g = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXd m(g, g);
  for (Eigen::Index a = 0; a < g; ++a)
    for (Eigen::Index b = 0; b < g; ++b) {
      const auto va = vectors.col(members[a]);
      const auto vb = vectors.col(members[b]);
      double s = 0.0;
      for (Eigen::Index k = 0; k < va.size(); ++k)
        s += va(k) * vb(static_cast<Eigen::Index>(mirror_of[k]));
      m(a, b) = s;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  std::vector<int> out;
  for (Eigen::Index k = 0; k < g; ++k) {
    const double p = solver.eigenvalues()(k);
    out.push_back(std::abs(p - 1.0) < 1e-6 ? 1
                  : std::abs(p + 1.0) < 1e-6 ? -1
                                             : 0);
  }
  return out;
}

struct SectorCheck {
  std::vector<double> energies;
  std::vector<int> levels;
  std::vector<int> parities;
  double max_error = 0.0;
  bool parity_ok = true;
};

// Diagonalizes one mirror-closed block and checks level/parity alternation.
SectorCheck check_block(const Eigen::MatrixXd& block,
                        const std::vector<std::size_t>& mirror_of,
                        double spacing, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
  SectorCheck out;
  const auto dim = block.rows();
  out.energies.assign(solver.eigenvalues().data(),
                      solver.eigenvalues().data() + dim);
  const LevelFit fit = fit_levels(out.energies, spacing);
  out.levels = fit.levels;
  out.max_error = fit.max_error;
  out.parities.assign(static_cast<std::size_t>(dim), 0);

  const double coincide = tol * std::max(std::abs(spacing), 1.0);
  int reference = 0;  // (-1)^(n_0) fixed by the lowest level
  std::size_t k = 0;
  while (k < out.levels.size()) {
    std::vector<int> members;
    const int level = out.levels[k];
    members.push_back(static_cast<int>(k));
    ++k;
    while (k < out.levels.size() &&
           out.energies[k] - out.energies[k - 1] < coincide) {
      members.push_back(static_cast<int>(k));
      ++k;
    }
    const std::vector<int> p =
        group_parities(solver.eigenvectors(), members, mirror_of);
    const bool has_plus = std::count(p.begin(), p.end(), 1) > 0;
    const bool has_minus = std::count(p.begin(), p.end(), -1) > 0;
    if (has_plus && has_minus) {
      throw Error(ErrorKind::kDegenerateSpectrum,
                  "level " + std::to_string(level) +
                      " holds both mirror parities");
    }
    for (std::size_t a = 0; a < members.size(); ++a)
      out.parities[static_cast<std::size_t>(members[a])] = p[a];
    const int group_parity = has_plus ? 1 : has_minus ? -1 : 0;
    if (group_parity == 0) {
      out.parity_ok = false;
      continue;
    }
    const int sign = (level % 2 == 0) ? 1 : -1;
    if (reference == 0) reference = group_parity * sign;
    if (group_parity != reference * sign) out.parity_ok = false;
  }
  if (out.max_error >= tol) out.parity_ok = false;
  return out;
}

std::vector<double> oes_energies(const ChainSpec& spec) {
  const std::vector<double> block = one_excitation_block(spec);
  Eigen::Map<const Eigen::MatrixXd> m(block.data(), spec.n, spec.n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m,
                                                        Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + spec.n};
}

}  // namespace

void ChainSpec::validate() const {
  if (n < 2) {
    throw Error(ErrorKind::kInvalidArgument, "chain needs at least 2 sites");
  }
  if (n > 12) {
    throw Error(ErrorKind::kInvalidArgument,
                "dense simulation supports at most 12 sites");
  }
  if (couplings.size() != static_cast<std::size_t>(n - 1) ||
      fields.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::kInvalidArgument,
                "expected n - 1 couplings and n fields");
  }
}

ChainSpec pst_spec(int n, double field) {
  if (n < 2) {
    throw Error(ErrorKind::kInvalidArgument, "chain needs at least 2 sites");
  }
  ChainSpec spec;
  spec.n = n;
  for (int i = 1; i < n; ++i)
    spec.couplings.push_back(std::sqrt(static_cast<double>(i * (n - i))));
  spec.fields.assign(static_cast<std::size_t>(n), field);
  return spec;
}

ChainSpec uniform_spec(int n, double coupling, double field) {
  ChainSpec spec;
  spec.n = n;
  spec.couplings.assign(static_cast<std::size_t>(std::max(n - 1, 0)),
                        coupling);
  spec.fields.assign(static_cast<std::size_t>(std::max(n, 0)), field);
  spec.validate();
  return spec;
}

DenseOperator build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const std::size_t dim = std::size_t{1} << n;
  DenseOperator h(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    double diag = 0.0;
    for (int i = 1; i <= n; ++i) {
      const bool up = ((a >> (n - i)) & 1u) == 0;
      diag += spec.fields[static_cast<std::size_t>(i - 1)] * (up ? 0.5 : -0.5);
    }
    h(a, a) = diag;
    // XX + YY with half spins hops a single flip across a bond with
    // amplitude 1/2.
    for (int i = 1; i < n; ++i) {
      const std::size_t hi = std::size_t{1} << (n - i);
      const std::size_t lo = hi >> 1;
      const bool bit_hi = (a & hi) != 0;
      const bool bit_lo = (a & lo) != 0;
      if (bit_hi == bit_lo) continue;
      h(a ^ hi ^ lo, a) = 0.5 * spec.couplings[static_cast<std::size_t>(i - 1)];
    }
  }
  return h;
}

std::vector<double> one_excitation_block(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n;
  double all_up = 0.0;
  for (double b : spec.fields) all_up += 0.5 * b;
  std::vector<double> block(static_cast<std::size_t>(n * n), 0.0);
  for (int k = 0; k < n; ++k) {
    block[static_cast<std::size_t>(k * n + k)] =
        all_up - spec.fields[static_cast<std::size_t>(k)];
    if (k + 1 < n) {
      const double hop = 0.5 * spec.couplings[static_cast<std::size_t>(k)];
      block[static_cast<std::size_t>(k * n + k + 1)] = hop;
      block[static_cast<std::size_t>((k + 1) * n + k)] = hop;
    }
  }
  return block;
}

SpectrumReport verify_parity_matching(const ChainSpec& spec, double tol,
                                      SpectrumScope scope) {
  spec.validate();
  const std::vector<double> oes = oes_energies(spec);
  const double spacing = mean_gap(oes);

  SpectrumReport report;
  report.spacing = spacing;
  report.offset = oes.front();
  report.parity_ok = true;

  if (scope == SpectrumScope::kOneExcitation) {
    const std::vector<double> block = one_excitation_block(spec);
    Eigen::Map<const Eigen::MatrixXd> m(block.data(), spec.n, spec.n);
    std::vector<std::size_t> mirror_of(static_cast<std::size_t>(spec.n));
    for (int k = 0; k < spec.n; ++k)
      mirror_of[static_cast<std::size_t>(k)] =
          static_cast<std::size_t>(spec.n - 1 - k);
    const SectorCheck c = check_block(m, mirror_of, spacing, tol);
    report.energies = c.energies;
    report.levels = c.levels;
    report.parities = c.parities;
    report.max_spacing_error = c.max_error;
    report.parity_ok = c.parity_ok;
    return report;
  }

  const DenseOperator h = build_hamiltonian(spec);
  const int n = spec.n;
  const std::size_t dim = h.dim();
  for (int excitations = 0; excitations <= n; ++excitations) {
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < dim; ++a)
      if (std::popcount(a) == excitations) members.push_back(a);
    std::vector<std::size_t> position(dim, 0);
    for (std::size_t k = 0; k < members.size(); ++k) position[members[k]] = k;
    const auto size = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd block(size, size);
    for (Eigen::Index r = 0; r < size; ++r)
      for (Eigen::Index c = 0; c < size; ++c)
        block(r, c) = h(members[r], members[c]).real();
    std::vector<std::size_t> mirror_of(members.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      mirror_of[k] = position[mirror_index(members[k], n)];
    const SectorCheck c = check_block(block, mirror_of, spacing, tol);
    report.energies.insert(report.energies.end(), c.energies.begin(),
                           c.energies.end());
    report.levels.insert(report.levels.end(), c.levels.begin(),
                         c.levels.end());
    report.parities.insert(report.parities.end(), c.parities.begin(),
                           c.parities.end());
    report.max_spacing_error = std::max(report.max_spacing_error, c.max_error);
    report.parity_ok = report.parity_ok && c.parity_ok;
  }
  std::sort(report.energies.begin(), report.energies.end());
  return report;
}

double transfer_period(const ChainSpec& spec, double tol) {
  const std::vector<double> e = oes_energies(spec);
  const double mean = mean_gap(e);
  if (!(mean > 0.0)) {
    throw Error(ErrorKind::kNotEquallySpaced, "zero one-excitation bandwidth");
  }
  double worst = 0.0;
  for (std::size_t k = 1; k < e.size(); ++k)
    worst = std::max(worst, std::abs((e[k] - e[k - 1]) - mean) / mean);
  if (worst > tol) {
    throw Error(ErrorKind::kNotEquallySpaced,
                "relative gap deviation " + std::to_string(worst));
  }
  return 2.0 * std::numbers::pi / mean;
}

SpectralPropagator::SpectralPropagator(const DenseOperator& hamiltonian)
    : eig_(eigh(hamiltonian)), vectors_dagger_(dagger(eig_.vectors)) {}

DenseOperator SpectralPropagator::at(double t) const {
  const std::size_t dim = eig_.vectors.dim();
  DenseOperator scaled = eig_.vectors;
  for (std::size_t c = 0; c < dim; ++c) {
    const Complex phase = std::polar(1.0, -eig_.values[c] * t);
    for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= phase;
  }
  return scaled * vectors_dagger_;
}

DenseOperator SpectralPropagator::conjugate(const DenseOperator& rho,
                                            double t) const {
  const DenseOperator u = at(t);
  return u * rho * dagger(u);
}

DenseOperator phase_correction(const ChainSpec& spec) {
  const double tau = transfer_period(spec);
  const SpectralPropagator propagator(build_hamiltonian(spec));
  const DenseOperator u = propagator.at(0.5 * tau);
  const std::size_t first = std::size_t{1} << (spec.n - 1);
  const Complex vacuum = u(0, 0);
  const Complex moved = u(1, first);
  if (std::abs(vacuum) < 0.5 || std::abs(moved) < 0.5) {
    throw Error(ErrorKind::kInvalidArgument,
                "chain does not mirror |10...0> at half period");
  }
  const Complex c = moved / vacuum;
  DenseOperator out(2);
  out(0, 0) = 1.0;
  out(1, 1) = std::conj(c) / std::abs(c);
  return out;
}

}  // namespace qst
