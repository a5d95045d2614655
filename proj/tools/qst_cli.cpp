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


// qst: sweeps, crossovers, threshold contours and the singlet experiment for
// one- and two-qubit codes on perfect-transfer xx chains.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qst/acceptance.hpp"
#include "qst/error.hpp"
#include "qst/harness.hpp"
#include "qst/kernels.hpp"

namespace {

using namespace qst;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Flags shared by the subcommands. Strings so that "inf" parses.
struct Flags {
  std::string config;
  int n = 6;
  std::string noise = "twirl";
  std::vector<std::string> encodings;
  double gamma_min = 0.01;
  double gamma_max = 10.0;
  int gamma_points = 24;
  std::string gamma_scale = "log";
  std::vector<std::string> beta_b;
  int steps = 600;
  std::string method = "rk4";
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "csv";
  std::string kernels;
};

double parse_beta(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorKind::kInvalidArgument, "bad betaB " + s);
  return v;
}

std::vector<double> beta_values(const Flags& f) {
  std::vector<double> out;
  for (const auto& s : f.beta_b) out.push_back(parse_beta(s));
  return out;
}

GridScale parse_scale(const std::string& s) {
  if (s == "log") return GridScale::kLog;
  if (s == "linear") return GridScale::kLinear;
  throw Error(ErrorKind::kInvalidArgument, "unknown scale " + s);
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw Error(ErrorKind::kInvalidArgument, "unknown format " + s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--n", f.n, "chain length")->check(CLI::Range(2, 12));
  app->add_option("--noise", f.noise,
                  "twirl, thermal-local, dephase-local, dephase-global, "
                  "thermal-global or none");
  app->add_option("--gamma-min", f.gamma_min, "smallest gamma (1/tau)");
  app->add_option("--gamma-max", f.gamma_max, "largest gamma (1/tau)");
  app->add_option("--gamma-points", f.gamma_points, "gamma grid size");
  app->add_option("--gamma-scale", f.gamma_scale, "log or linear");
  app->add_option("--beta-b", f.beta_b, "betaB values; 'inf' allowed");
  app->add_option("--steps", f.steps, "RK4 steps per half period")
      ->check(CLI::PositiveNumber);
  app->add_option("--method", f.method, "rk4 or split");
  app->add_option("--seed", f.seed, "seed for Monte Carlo checks");
  app->add_option("--out", f.out, "output path (default stdout)");
  app->add_option("--format", f.format, "csv or json");
}

IntegratorConfig integrator_from(const Flags& f) {
  IntegratorConfig cfg;
  cfg.method = parse_method(f.method);
  cfg.steps_per_half_period = f.steps;
  cfg.validate();
  return cfg;
}

Grid gamma_grid_from(const Flags& f) {
  return {f.gamma_min, f.gamma_max, f.gamma_points, parse_scale(f.gamma_scale),
          false};
}

bool given(const CLI::App* app, const char* name) {
  return app->count(name) > 0;
}

SweepConfig sweep_config(const CLI::App* app, const Flags& f) {
  SweepConfig c;
  if (!f.config.empty()) c = sweep_config_from_json(read_file(f.config));
  if (given(app, "--noise") || f.config.empty()) c.model = parse_noise(f.noise);
  if (given(app, "--n")) c.chain = pst_spec(f.n, 0.0);
  if (!f.encodings.empty()) {
    c.encodings.clear();
    for (const auto& e : f.encodings) c.encodings.push_back(parse_encoding(e));
  }
  if (given(app, "--gamma-min")) c.gamma_grid.min = f.gamma_min;
  if (given(app, "--gamma-max")) c.gamma_grid.max = f.gamma_max;
  if (given(app, "--gamma-points")) c.gamma_grid.points = f.gamma_points;
  if (given(app, "--gamma-scale")) c.gamma_grid.scale = parse_scale(f.gamma_scale);
  if (given(app, "--beta-b")) {
    const auto betas = beta_values(f);
    // An explicit list becomes a grid of those values; the sweep iterates
    // them through one linear grid per value.
    if (betas.size() == 1) {
      Grid g{betas[0], betas[0], 1, GridScale::kLinear, false};
      if (std::isinf(betas[0])) g = {0.0, 0.0, 0, GridScale::kLinear, true};
      c.beta_grid = g;
    } else {
      throw Error(ErrorKind::kInvalidArgument,
                  "sweep takes one --beta-b value; omit it for the default "
                  "grid");
    }
  }
  if (!c.beta_grid && is_thermal(c.model)) c.beta_grid = default_beta_grid();
  if (given(app, "--steps")) c.integrator.steps_per_half_period = f.steps;
  if (given(app, "--method")) c.integrator.method = parse_method(f.method);
  if (given(app, "--seed")) c.seed = f.seed;
  if (given(app, "--threads")) c.threads = f.threads;
  if (given(app, "--out")) c.output_path = f.out;
  if (given(app, "--format")) c.format = parse_format(f.format);
  return c;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump() << '\n'; }

nlohmann::json real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

int run_sweep(const CLI::App* app, const Flags& f) {
  const SweepConfig c = sweep_config(app, f);
  const auto records = sweep(c);
  write_records(records, c.output_path, c.format);
  int failures = 0;
  for (const auto& r : records)
    if (!r.error.empty()) {
      ++failures;
      std::cerr << "warning: " << encoding_name(r.encoding) << " gamma "
                << r.gamma << ": " << r.error << '\n';
    }
  if (failures) std::cerr << failures << " grid points failed\n";
  return 0;
}

int run_crossover(const CLI::App* app, const Flags& f) {
  const NoiseId model = parse_noise(f.noise);
  std::optional<double> beta;
  if (!f.beta_b.empty()) beta = parse_beta(f.beta_b.front());
  const double lo = given(app, "--gamma-min") ? f.gamma_min : 1.0;
  const double hi = f.gamma_max;
  const CrossoverResult r = find_crossover(model, pst_spec(f.n, 0.0), lo, hi,
                                           beta, integrator_from(f));
  print_json({{"model", noise_name(model)},
              {"n", f.n},
              {"gamma", r.gamma},
              {"f_a", r.f_a},
              {"f_b", r.f_b},
              {"f", r.f},
              {"quantum", r.f > 2.0 / 3.0},
              {"evaluations", r.evaluations}});
  return 0;
}

int run_contour(const CLI::App* app, Flags f, double level) {
  (void)app;
  const NoiseId model = given(app, "--noise") ? parse_noise(f.noise)
                                              : NoiseId::kLocalThermal;
  std::vector<double> betas = beta_values(f);
  if (betas.empty()) betas = default_beta_grid().values();
  if (f.encodings.empty()) f.encodings = {"a", "b"};
  std::ostringstream csv;
  csv << "encoding,beta_b,gamma,f\n";
  for (const auto& e : f.encodings) {
    const ContourResult c = trace_threshold_contour(
        model, parse_encoding(e), pst_spec(f.n, 0.0), level, betas,
        f.gamma_min, f.gamma_max, integrator_from(f));
    for (const auto& p : c.points) {
      char line[160];
      std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g\n", e.c_str(),
                    p.beta_b, p.gamma, p.f);
      csv << line;
    }
    for (double b : c.unbracketed)
      std::cerr << "code " << e << ": F never reaches " << level
                << " at betaB " << b << '\n';
  }
  if (f.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(f.out);
    if (!out) throw Error(ErrorKind::kIo, "cannot open " + f.out);
    out << csv.str();
  }
  return 0;
}

int run_singlet(const CLI::App* app, Flags f) {
  if (!given(app, "--n")) f.n = 8;
  if (!given(app, "--gamma-min")) f.gamma_min = 0.5;
  if (!given(app, "--gamma-max")) f.gamma_max = 4.0;
  if (!given(app, "--gamma-points")) f.gamma_points = 4;
  if (!given(app, "--gamma-scale")) f.gamma_scale = "linear";
  const double beta = f.beta_b.empty() ? kInf : parse_beta(f.beta_b.front());
  const SingletReport r = singlet_decay_experiment(
      pst_spec(f.n, 0.0), gamma_grid_from(f).values(), beta,
      integrator_from(f));
  write_records(r.records, f.out, parse_format(f.format));
  std::cerr << "static check (H = 0): max deviation " << r.static_deviation
            << '\n';
  return r.static_deviation < 1e-8 ? 0 : 1;
}

int run_verify(bool all, int n) {
  const SpectrumReport s = verify_parity_matching(pst_spec(n, 0.0));
  std::printf("parity matching N=%d: spacing %.6f, max level error %.2e, %s\n",
              n, s.spacing, s.max_spacing_error,
              s.parity_ok ? "ok" : "broken");
  std::printf("kernels: %s\n",
              std::string(kernels::isa_name(kernels::active().isa)).c_str());
  std::vector<int> ids = quick_criteria();
  if (all) {
    ids.clear();
    for (int k = 1; k <= acceptance_count(); ++k) ids.push_back(k);
  }
  int failed = s.parity_ok ? 0 : 1;
  for (int id : ids) {
    const CheckResult r = run_criterion(id);
    std::printf("%s\n", format_check(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy state transfer on perfect-transfer spin chains"};
  app.require_subcommand(1);
  Flags f;
  bool all = false;
  double level = 2.0 / 3.0;

  auto* sweep_cmd = app.add_subcommand("sweep", "fidelity against gamma");
  add_common(sweep_cmd, f);
  sweep_cmd->add_option("--config", f.config, "JSON config; flags override");
  sweep_cmd->add_option("--encoding", f.encodings, "a, b or singlet")
      ->delimiter(',');
  sweep_cmd->add_option("--threads", f.threads, "worker threads (0: auto)");

  auto* cross_cmd =
      app.add_subcommand("crossover", "gamma where F(a) = F(b), by bisection");
  add_common(cross_cmd, f);

  auto* contour_cmd =
      app.add_subcommand("contour", "gamma with F = level for each betaB");
  add_common(contour_cmd, f);
  contour_cmd->add_option("--encoding", f.encodings, "a, b or singlet")
      ->delimiter(',');
  contour_cmd->add_option("--level", level, "fidelity level");

  auto* singlet_cmd =
      app.add_subcommand("singlet", "singlet code under collective noise");
  add_common(singlet_cmd, f);

  auto* verify_cmd =
      app.add_subcommand("verify", "parity matching and acceptance checks");
  verify_cmd->add_option("--n", f.n, "chain length for the parity report");
  verify_cmd->add_flag("--all", all, "run every criterion (minutes)");

  app.add_option("--kernels", f.kernels, "force scalar or avx2 kernels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (f.kernels == "scalar") kernels::select(kernels::Isa::kScalar);
    if (f.kernels == "avx2") kernels::select(kernels::Isa::kAvx2);
    if (*sweep_cmd) return run_sweep(sweep_cmd, f);
    if (*cross_cmd) return run_crossover(cross_cmd, f);
    if (*contour_cmd) return run_contour(contour_cmd, f, level);
    if (*singlet_cmd) return run_singlet(singlet_cmd, f);
    if (*verify_cmd) return run_verify(all, f.n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
