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


#include "qst/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qst/error.hpp"

namespace qst {
namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s) {
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan" || s == "-nan") return kNaN;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw Error(ErrorKind::kIo, "not a number: '" + s + "'");
  }
  return v;
}

json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw Error(ErrorKind::kIo, "expected a number");
}

FidelityRecord failed_record(NoiseId model, EncodingId encoding, int n,
                             double gamma, double beta_b) {
  FidelityRecord rec;
  rec.model = model;
  rec.encoding = encoding;
  rec.n = n;
  rec.gamma = gamma;
  rec.beta_b = beta_b;
  rec.f = rec.f_x = rec.f_y = rec.f_z = kNaN;
  rec.identity_fidelity = rec.readout_success = kNaN;
  rec.diagnostics.max_trace_drift = kNaN;
  rec.diagnostics.min_eigenvalue = kNaN;
  return rec;
}

// Runs job(i) for i in [0, count) on `threads` workers.
template <typename Job>
void parallel_for(std::size_t count, int threads, const Job& job) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  for (std::thread& t : pool) t.join();
}

const char* kCsvHeader =
    "model,encoding,n,gamma,beta_b,f,f_x,f_y,f_z,trace_drift,min_eig";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void Grid::validate() const {
  if (points < 1 && !(points == 0 && append_infinity)) {
    throw Error(ErrorKind::kInvalidArgument, "grid needs at least one point");
  }
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorKind::kInvalidArgument, "grid bounds must be finite");
  }
  if (points > 1 && !(min < max)) {
    throw Error(ErrorKind::kInvalidArgument, "grid needs min < max");
  }
  if (scale == GridScale::kLog && !(min > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "log grid needs min > 0");
  }
}

std::vector<double> Grid::values() const {
  validate();
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    if (scale == GridScale::kLog) {
      out.push_back(std::exp(std::log(min) + s * (std::log(max) - std::log(min))));
    } else {
      out.push_back(min + s * (max - min));
    }
  }
  // Land exactly on the bounds.
  if (points > 0) out.front() = min;
  if (points > 1) out.back() = max;
  if (append_infinity) out.push_back(kInf);
  return out;
}

Grid default_gamma_grid() { return {0.01, 10.0, 24, GridScale::kLog, false}; }

Grid default_beta_grid() { return {0.0, 6.0, 12, GridScale::kLinear, true}; }

void SweepConfig::validate() const {
  chain.validate();
  gamma_grid.validate();
  if (gamma_grid.append_infinity) {
    throw Error(ErrorKind::kInvalidArgument, "gamma grid must be finite");
  }
  if (encodings.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no encodings selected");
  }
  if (is_thermal(model) && !beta_grid) {
    throw Error(ErrorKind::kThermalParamMissing,
                std::string(noise_name(model)) + " needs a betaB grid");
  }
  if (beta_grid) beta_grid->validate();
  integrator.validate();
}

std::vector<FidelityRecord> sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> gammas = config.gamma_grid.values();
  std::vector<double> betas = {kNaN};
  if (is_thermal(config.model)) betas = config.beta_grid->values();

  std::vector<TransferSetup> setups;
  for (EncodingId e : config.encodings) setups.emplace_back(e, config.chain);

  struct Task {
    std::size_t setup;
    double beta_b;
    double gamma;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < setups.size(); ++s)
    for (double beta : betas)
      for (double gamma : gammas) tasks.push_back({s, beta, gamma});

  std::vector<FidelityRecord> records(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const Task& task = tasks[i];
    const TransferSetup& setup = setups[task.setup];
    std::optional<double> beta;
    if (!std::isnan(task.beta_b)) beta = task.beta_b;
    try {
      records[i] = average_fidelity(setup, config.model, task.gamma, beta,
                                    config.integrator);
    } catch (const ToleranceViolated& e) {
      records[i] = failed_record(config.model, setup.scheme().id,
                                 config.chain.n, task.gamma,
                                 beta.value_or(0.0));
      records[i].diagnostics = e.diagnostics();
      records[i].error = e.what();
    } catch (const Error& e) {
      records[i] = failed_record(config.model, setup.scheme().id,
                                 config.chain.n, task.gamma,
                                 beta.value_or(0.0));
      records[i].error = e.what();
    }
  });
  return records;
}

void write_csv(std::ostream& out, const std::vector<FidelityRecord>& records) {
  out << kCsvHeader << '\n';
  for (const FidelityRecord& r : records) {
    out << noise_name(r.model) << ',' << encoding_name(r.encoding) << ','
        << r.n << ',' << format_real(r.gamma) << ',' << format_real(r.beta_b)
        << ',' << format_real(r.f) << ',' << format_real(r.f_x) << ','
        << format_real(r.f_y) << ',' << format_real(r.f_z) << ','
        << format_real(r.diagnostics.max_trace_drift) << ','
        << format_real(r.diagnostics.min_eigenvalue) << '\n';
  }
}

std::vector<FidelityRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorKind::kIo, "missing or unexpected CSV header");
  }
  std::vector<FidelityRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 11) {
      throw Error(ErrorKind::kIo, "expected 11 CSV fields: " + line);
    }
    FidelityRecord r;
    r.model = parse_noise(cells[0]);
    r.encoding = parse_encoding(cells[1]);
    r.n = static_cast<int>(parse_real(cells[2]));
    r.gamma = parse_real(cells[3]);
    r.beta_b = parse_real(cells[4]);
    r.f = parse_real(cells[5]);
    r.f_x = parse_real(cells[6]);
    r.f_y = parse_real(cells[7]);
    r.f_z = parse_real(cells[8]);
    r.diagnostics.max_trace_drift = parse_real(cells[9]);
    r.diagnostics.min_eigenvalue = parse_real(cells[10]);
    out.push_back(r);
  }
  return out;
}

void write_json_lines(std::ostream& out,
                      const std::vector<FidelityRecord>& records) {
  for (const FidelityRecord& r : records) {
    json j = json::object();
    j["model"] = noise_name(r.model);
    j["encoding"] = encoding_name(r.encoding);
    j["n"] = r.n;
    j["gamma"] = real_to_json(r.gamma);
    j["beta_b"] = real_to_json(r.beta_b);
    j["f"] = real_to_json(r.f);
    j["f_x"] = real_to_json(r.f_x);
    j["f_y"] = real_to_json(r.f_y);
    j["f_z"] = real_to_json(r.f_z);
    j["trace_drift"] = real_to_json(r.diagnostics.max_trace_drift);
    j["min_eig"] = real_to_json(r.diagnostics.min_eigenvalue);
    if (!r.error.empty()) j["error"] = r.error;
    out << j.dump() << '\n';
  }
}

std::vector<FidelityRecord> read_json_lines(std::istream& in) {
  std::vector<FidelityRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kIo, std::string("bad JSON line: ") + e.what());
    }
    try {
      FidelityRecord r;
      r.model = parse_noise(j.at("model").get<std::string>());
      r.encoding = parse_encoding(j.at("encoding").get<std::string>());
      r.n = j.at("n").get<int>();
      r.gamma = real_from_json(j.at("gamma"));
      r.beta_b = real_from_json(j.at("beta_b"));
      r.f = real_from_json(j.at("f"));
      r.f_x = real_from_json(j.at("f_x"));
      r.f_y = real_from_json(j.at("f_y"));
      r.f_z = real_from_json(j.at("f_z"));
      r.diagnostics.max_trace_drift = real_from_json(j.at("trace_drift"));
      r.diagnostics.min_eigenvalue = real_from_json(j.at("min_eig"));
      if (j.contains("error")) r.error = j["error"].get<std::string>();
      out.push_back(r);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kIo, std::string("bad record: ") + e.what());
    }
  }
  return out;
}

void write_records(const std::vector<FidelityRecord>& records,
                   const std::string& path, OutputFormat format) {
  auto emit = [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      write_csv(os, records);
    } else {
      write_json_lines(os, records);
    }
  };
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path);
  emit(file);
  if (!file) throw Error(ErrorKind::kIo, "write failed on " + path);
}

CrossoverResult find_crossover(NoiseId model, const ChainSpec& chain,
                               double gamma_low, double gamma_high,
                               std::optional<double> beta_b,
                               const IntegratorConfig& config,
                               double f_tolerance, double gamma_tolerance) {
  if (!(gamma_low > 0.0) || !(gamma_low < gamma_high)) {
    throw Error(ErrorKind::kInvalidArgument,
                "crossover bracket needs 0 < low < high");
  }
  const TransferSetup a(EncodingId::kA, chain);
  const TransferSetup b(EncodingId::kB, chain);
  CrossoverResult out;
  auto eval = [&](double g, double& fa, double& fb) {
    fa = average_fidelity(a, model, g, beta_b, config).f;
    fb = average_fidelity(b, model, g, beta_b, config).f;
    ++out.evaluations;
    return fa - fb;
  };
  double lo = gamma_low, hi = gamma_high;
  double fa = 0.0, fb = 0.0;
  const double d_lo = eval(lo, fa, fb);
  const double d_hi = eval(hi, fa, fb);
  if (d_lo != 0.0 && d_hi != 0.0 && (d_lo > 0.0) == (d_hi > 0.0)) {
    throw Error(ErrorKind::kNoSignChange,
                "F(a) - F(b) is " + format_real(d_lo) + " at gamma " +
                    format_real(lo) + " and " + format_real(d_hi) +
                    " at gamma " + format_real(hi));
  }
  double mid = d_hi == 0.0 ? hi : lo;
  if (d_lo != 0.0 && d_hi != 0.0) {
    const bool low_negative = d_lo < 0.0;
    for (int it = 0; it < 200; ++it) {
      mid = std::sqrt(lo * hi);
      const double d = eval(mid, fa, fb);
      if (d == 0.0) break;
      if ((d < 0.0) == low_negative) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (std::abs(d) < f_tolerance && hi / lo - 1.0 < gamma_tolerance) break;
    }
  } else {
    eval(mid, fa, fb);
  }
  out.gamma = mid;
  out.f_a = fa;
  out.f_b = fb;
  out.f = 0.5 * (fa + fb);
  out.bracket_low = lo;
  out.bracket_high = hi;
  return out;
}

ContourPoint threshold_gamma(const TransferSetup& setup, NoiseId model,
                             double beta_b, double level, double gamma_low,
                             double gamma_high, const IntegratorConfig& config,
                             double tolerance) {
  if (!(gamma_low > 0.0) || !(gamma_low < gamma_high)) {
    throw Error(ErrorKind::kInvalidArgument,
                "threshold bracket needs 0 < low < high");
  }
  auto f_at = [&](double g) {
    return average_fidelity(setup, model, g, beta_b, config).f;
  };
  double lo = gamma_low, hi = gamma_high;
  const double d_lo = f_at(lo) - level;
  const double d_hi = f_at(hi) - level;
  if ((d_lo > 0.0) == (d_hi > 0.0)) {
    throw Error(ErrorKind::kLevelNotBracketed,
                "F - level keeps one sign on [" + format_real(lo) + ", " +
                    format_real(hi) + "] at betaB " + format_real(beta_b));
  }
  const bool low_above = d_lo > 0.0;
  ContourPoint p{std::sqrt(lo * hi), beta_b, 0.0};
  for (int it = 0; it < 200; ++it) {
    p.gamma = std::sqrt(lo * hi);
    p.f = f_at(p.gamma);
    const double d = p.f - level;
    if (std::abs(d) < tolerance || hi / lo - 1.0 < 1e-12) break;
    if ((d > 0.0) == low_above) {
      lo = p.gamma;
    } else {
      hi = p.gamma;
    }
  }
  return p;
}

ContourResult trace_threshold_contour(NoiseId model, EncodingId encoding,
                                      const ChainSpec& chain, double level,
                                      const std::vector<double>& beta_values,
                                      double gamma_low, double gamma_high,
                                      const IntegratorConfig& config,
                                      double tolerance) {
  if (!is_thermal(model)) {
    throw Error(ErrorKind::kInvalidArgument,
                "threshold contours run over betaB; use a thermal model");
  }
  const TransferSetup setup(encoding, chain);
  ContourResult out;
  out.level = level;
  out.bracket_tolerance = tolerance;
  for (double beta : beta_values) {
    try {
      out.points.push_back(threshold_gamma(setup, model, beta, level,
                                           gamma_low, gamma_high, config,
                                           tolerance));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kLevelNotBracketed) throw;
      out.unbracketed.push_back(beta);
    }
  }
  return out;
}

SingletReport singlet_decay_experiment(const ChainSpec& chain,
                                       const std::vector<double>& gammas,
                                       double beta_b,
                                       const IntegratorConfig& config) {
  if (chain.n < 8) {
    throw Error(ErrorKind::kInvalidArgument,
                "the singlet experiment needs at least 8 sites");
  }
  const TransferSetup setup(EncodingId::kSinglet, chain);
  SingletReport report;
  for (double g : gammas)
    report.records.push_back(average_fidelity(
        setup, NoiseId::kGlobalThermal, g, beta_b, config));

  // Chain switched off: the code must not move at all.
  const double g_max =
      gammas.empty() ? 0.0 : *std::max_element(gammas.begin(), gammas.end());
  const Integrator still(DenseOperator(setup.hamiltonian().dim()),
                         setup.noise(NoiseId::kGlobalThermal, g_max, beta_b),
                         config);
  const EncodingScheme& scheme = setup.scheme();
  const double t = setup.transfer_time();
  const std::array<DenseOperator, 3> probes = {
      outer(scheme.code_states[0], scheme.code_states[0]),
      outer(scheme.code_states[1], scheme.code_states[1]),
      Complex{2.0} * scheme.op(LogicalOp::kX)};
  for (int k = 0; k < 3; ++k) {
    const DenseOperator moved = k < 2 ? still.evolve_state(probes[k], t).rho
                                      : still.evolve_operator(probes[k], t).rho;
    report.static_deviation =
        std::max(report.static_deviation, max_abs_diff(moved, probes[k]));
  }
  return report;
}

SlopeFit global_dephase_slope(EncodingId encoding, const ChainSpec& chain,
                              const std::vector<double>& gammas,
                              const IntegratorConfig& config) {
  if (gammas.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "slope fit needs two points");
  }
  const TransferSetup setup(encoding, chain);
  SlopeFit fit;
  fit.gammas = gammas;
  for (double g : gammas)
    fit.fidelities.push_back(
        average_fidelity(setup, NoiseId::kGlobalDephase, g, std::nullopt,
                         config)
            .f);
  const double n = static_cast<double>(gammas.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    mx += gammas[i];
    my += fit.fidelities[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double dx = gammas[i] - mx;
    const double dy = fit.fidelities[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : kNaN;
  return fit;
}

ChainSpec chain_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("bad chain JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    ChainSpec spec = pst_spec(n, j.value("field", 0.0));
    if (j.contains("couplings"))
      spec.couplings = j["couplings"].get<std::vector<double>>();
    if (j.contains("fields"))
      spec.fields = j["fields"].get<std::vector<double>>();
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("bad chain JSON: ") + e.what());
  }
}

std::string chain_to_json(const ChainSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["couplings"] = spec.couplings;
  j["fields"] = spec.fields;
  return j.dump();
}

namespace {

Grid grid_from_json(const json& j, Grid grid) {
  grid.min = j.value("min", grid.min);
  grid.max = j.value("max", grid.max);
  grid.points = j.value("points", grid.points);
  if (j.contains("scale")) {
    const auto s = j["scale"].get<std::string>();
    if (s == "log") {
      grid.scale = GridScale::kLog;
    } else if (s == "linear") {
      grid.scale = GridScale::kLinear;
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown grid scale " + s);
    }
  }
  grid.append_infinity = j.value("infinity", grid.append_infinity);
  return grid;
}

}  // namespace

SweepConfig sweep_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("bad config JSON: ") + e.what());
  }
  SweepConfig c;
  try {
    if (j.contains("model")) c.model = parse_noise(j["model"].get<std::string>());
    if (j.contains("encodings")) {
      c.encodings.clear();
      for (const auto& e : j["encodings"])
        c.encodings.push_back(parse_encoding(e.get<std::string>()));
    }
    if (j.contains("n")) c.chain = pst_spec(j["n"].get<int>(), 0.0);
    if (j.contains("chain")) c.chain = chain_from_json(j["chain"].dump());
    if (j.contains("gamma")) c.gamma_grid = grid_from_json(j["gamma"], c.gamma_grid);
    if (j.contains("beta_b")) {
      const json& b = j["beta_b"];
      if (b.is_object()) {
        c.beta_grid = grid_from_json(b, default_beta_grid());
      } else {
        const double v = real_from_json(b);
        Grid fixed{0.0, 0.0, 1, GridScale::kLinear, false};
        if (std::isinf(v)) {
          fixed.points = 0;
          fixed.append_infinity = true;
        } else {
          fixed.min = fixed.max = v;
        }
        c.beta_grid = fixed;
      }
    }
    if (j.contains("method"))
      c.integrator.method = parse_method(j["method"].get<std::string>());
    c.integrator.steps_per_half_period =
        j.value("steps", c.integrator.steps_per_half_period);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.output_path = j.value("out", c.output_path);
    if (j.contains("format")) {
      const auto f = j["format"].get<std::string>();
      if (f == "csv") {
        c.format = OutputFormat::kCsv;
      } else if (f == "json") {
        c.format = OutputFormat::kJson;
      } else {
        throw Error(ErrorKind::kInvalidArgument, "unknown format " + f);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("bad config: ") + e.what());
  }
  return c;
}

}  // namespace qst
