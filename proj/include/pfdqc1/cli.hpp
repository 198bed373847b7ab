// Copyright 2026 The pfdqc1 Authors
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

// Command dispatch for the pfdqc1 executable. run_cli takes the arguments
// after the program name and writes reports to `out`, diagnostics to `err`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pfdqc1/estimators.hpp"
#include "pfdqc1/random.hpp"
#include "pfdqc1/report.hpp"
#include "pfdqc1/validate.hpp"

namespace pfdqc1::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kInfeasible = 3, kPropertyFailure = 4 };

enum class MethodChoice { Auto, Chebyshev, Hst };

struct RunConfig {
  std::string command;
  std::string input_path;
  MethodChoice method = MethodChoice::Auto;
  std::optional<double> beta;
  std::optional<double> eps_abs;
  std::optional<double> eps_rel;
  double delta = 0.1;
  EstimationMode mode = EstimationMode::Analytic;
  std::uint64_t seed = 0;
  double shot_cap = kDefaultShotCap;
  std::optional<double> z_max;
  std::string output_path;
  std::string csv_path;
  bool timing = false;
  // validate
  int instances = 4;
  bool corrupt = false;
  // bench
  std::string sweep = "beta";
  std::vector<double> values;
};

inline HamiltonianSpec read_spec(const std::string& path) {
  if (path.empty()) throw InputError("--input: a Hamiltonian file is required");
  std::ifstream f(path);
  if (!f) throw InputError("--input: cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spec(ss.str());
}

inline Method resolve_method(MethodChoice c, const HamiltonianSpec& spec) {
  switch (c) {
    case MethodChoice::Chebyshev: return Method::Chebyshev;
    case MethodChoice::Hst: return Method::Hst;
    default:
      return spec.kind() == HamiltonianKind::ProjectorSum ? Method::Hst : Method::Chebyshev;
  }
}

inline double require_beta(const RunConfig& cfg) {
  if (!cfg.beta) throw InputError("--beta is required");
  if (!(*cfg.beta >= 0.0) || !std::isfinite(*cfg.beta)) throw InputError("--beta must be >= 0");
  return *cfg.beta;
}

inline double require_eps_abs(const RunConfig& cfg) {
  if (cfg.eps_rel) throw InputError("--eps-rel is not accepted by '" + cfg.command + "'; use --eps-abs");
  if (!cfg.eps_abs) throw InputError("--eps-abs is required");
  if (!(*cfg.eps_abs > 0.0)) throw InputError("--eps-abs must be > 0");
  return *cfg.eps_abs;
}

inline double require_eps_rel(const RunConfig& cfg) {
  if (cfg.eps_abs) throw InputError("--eps-abs is not accepted by '" + cfg.command + "'; use --eps-rel");
  if (!cfg.eps_rel) throw InputError("--eps-rel is required");
  if (!(*cfg.eps_rel > 0.0 && *cfg.eps_rel <= 1.0)) throw InputError("--eps-rel must be in (0, 1]");
  return *cfg.eps_rel;
}

inline void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  const std::string text = to_json_text(j) + "\n";
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path);
  if (!f) throw InputError("--out: cannot write '" + cfg.output_path + "'");
  f << text;
}

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const HamiltonianSpec spec = read_spec(cfg.input_path);
  const double beta = require_beta(cfg);
  const double bs = beta * spec.beta_scale();
  const EigenSystem es = eigh(to_dense(spec));
  const auto original = [&](double lam) { return spec.beta_scale() * (lam + spec.energy_shift()); };
  Json j;
  j["command"] = "exact";
  j["m"] = spec.qubits();
  j["beta"] = beta;
  j["Z"] = exact_partition_function(spec, bs);
  j["eigen_extremes"] = {{"min", original(es.values(0))},
                         {"max", original(es.values(es.values.size() - 1))}};
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_plan(const RunConfig& cfg, std::ostream& out) {
  const HamiltonianSpec spec = read_spec(cfg.input_path);
  const double beta = require_beta(cfg);
  const double eps = require_eps_abs(cfg);
  const Method method = resolve_method(cfg.method, spec);
  const CostModel c = cost_model(spec, beta * spec.beta_scale(), eps, cfg.delta, method, cfg.shot_cap);
  Json j;
  j["command"] = "plan";
  j["beta"] = beta;
  j["mode"] = to_string(cfg.mode);
  j["delta"] = cfg.delta;
  j.update(to_json(c));
  if (!c.feasible) j["required_q"] = c.shots_per_term;
  emit(j, cfg, out);
  return (cfg.mode == EstimationMode::Sampled && !c.feasible) ? kInfeasible : kOk;
}

inline Json oracle_json(double z_hat_original, const HamiltonianSpec& spec, double bs) {
  Json o;
  try {
    const double z = exact_partition_function(spec, bs);
    o["oracle_checked"] = true;
    o["z_exact_original"] = z;
    o["abs_error_original"] = std::abs(z_hat_original - z);
    o["rel_error_original"] = std::abs(z_hat_original - z) / z;
  } catch (const InputError&) {
    o["oracle_checked"] = false;
  }
  return o;
}

inline int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const HamiltonianSpec spec = read_spec(cfg.input_path);
  const double beta = require_beta(cfg);
  const double eps = require_eps_abs(cfg);
  const Method method = resolve_method(cfg.method, spec);
  const double bs = beta * spec.beta_scale();
  const PreparedSpec p = prepare_spec(spec, method);
  const double bw = bs * p.beta_factor;
  AdditiveConfig a;
  a.eps_abs = eps;
  a.delta = cfg.delta;
  a.z_max = cfg.z_max;
  a.mode = cfg.mode;
  a.shot_cap = cfg.shot_cap;
  a.seed = cfg.seed;
  const EstimationReport r = estimate_pf(p.spec, bw, method, a);
  Json j;
  j["command"] = "estimate";
  j["beta"] = beta;
  j["seed"] = cfg.seed;
  j.update(to_json(r));
  Json o = oracle_json(r.z_hat_original, spec, bs);
  if (o["oracle_checked"].get<bool>()) {
    const double zw = working_partition_function(p.spec, bw);
    o["z_exact"] = zw;
    o["abs_error"] = std::abs(r.z_hat - zw);
  }
  j["oracle"] = std::move(o);
  if (cfg.timing) j["wall_ms"] = elapsed_ms(start);
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_relative(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const HamiltonianSpec spec = read_spec(cfg.input_path);
  const double beta = require_beta(cfg);
  const double eps = require_eps_rel(cfg);
  const Method method = resolve_method(cfg.method, spec);
  const double bs = beta * spec.beta_scale();
  RelativeConfig rc;
  rc.eps_rel = eps;
  rc.delta = cfg.delta;
  rc.mode = cfg.mode;
  rc.seed = cfg.seed;
  rc.shot_cap = cfg.shot_cap;
  rc.z_max = cfg.z_max;
  const EstimationReport r = solve_pfp(spec, bs, method, rc);
  Json j;
  j["command"] = "relative";
  j["beta"] = beta;
  j["seed"] = cfg.seed;
  j["eps_rel"] = eps;
  j.update(to_json(r));
  j["oracle"] = oracle_json(r.z_hat_original, spec, bs);
  if (cfg.timing) j["wall_ms"] = elapsed_ms(start);
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  ValidateOptions o;
  if (cfg.seed != 0) o.seed = cfg.seed;
  o.instances = cfg.instances;
  o.corrupt_block_encoding = cfg.corrupt;
  if (o.instances < 1) throw InputError("--instances must be >= 1");
  const auto results = run_property_suite(o);
  Json props = Json::array();
  bool all = true;
  for (const auto& p : results) {
    props.push_back(to_json(p));
    all = all && p.passed;
  }
  Json j;
  j["command"] = "validate";
  j["seed"] = o.seed;
  j["instances"] = o.instances;
  j["passed"] = all;
  j["properties"] = std::move(props);
  emit(j, cfg, out);
  return all ? kOk : kPropertyFailure;
}

inline std::vector<double> default_sweep(const std::string& sweep) {
  if (sweep == "beta") return {0.25, 0.5, 1.0, 2.0, 4.0};
  if (sweep == "eps") return {0.1, 0.05, 0.02, 0.01, 0.005};
  return {1, 2, 3, 4};
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sweep != "beta" && cfg.sweep != "eps" && cfg.sweep != "m") {
    throw InputError("--sweep must be beta, eps or m");
  }
  if (cfg.eps_abs && cfg.eps_rel) throw InputError("give only one of --eps-abs / --eps-rel");
  const bool relative = cfg.eps_rel.has_value();
  const std::vector<double> values = cfg.values.empty() ? default_sweep(cfg.sweep) : cfg.values;
  std::optional<HamiltonianSpec> file_spec;
  if (cfg.sweep != "m") file_spec = read_spec(cfg.input_path);

  std::ostringstream csv;
  csv << "param,K_or_J,Q,total_shots,z_hat,z_exact,rel_err,wall_ms\n";
  Rng rng(cfg.seed);
  for (const double v : values) {
    const auto start = Clock::now();
    double beta = cfg.beta.value_or(1.0);
    double eps = relative ? *cfg.eps_rel : cfg.eps_abs.value_or(0.05);
    std::optional<HamiltonianSpec> spec = file_spec;
    if (cfg.sweep == "beta") beta = v;
    if (cfg.sweep == "eps") eps = v;
    if (cfg.sweep == "m") {
      const int m = static_cast<int>(v);
      if (m < 1 || static_cast<double>(m) != v) throw InputError("--values: m must be a positive integer");
      spec = cfg.method == MethodChoice::Hst ? random_projector_sum(m, 2, rng)
                                             : random_unitary_sum(m, static_cast<std::size_t>(m) + 1, rng);
    }
    const Method method = resolve_method(cfg.method, *spec);
    const double bs = beta * spec->beta_scale();
    EstimationReport r;
    if (relative) {
      RelativeConfig rc;
      rc.eps_rel = eps;
      rc.delta = cfg.delta;
      rc.mode = cfg.mode;
      rc.seed = cfg.seed;
      rc.shot_cap = cfg.shot_cap;
      r = solve_pfp(*spec, bs, method, rc);
    } else {
      const PreparedSpec p = prepare_spec(*spec, method);
      AdditiveConfig a;
      a.eps_abs = eps;
      a.delta = cfg.delta;
      a.mode = cfg.mode;
      a.shot_cap = cfg.shot_cap;
      a.seed = cfg.seed;
      r = estimate_pf(p.spec, bs * p.beta_factor, method, a);
    }
    const double z = exact_partition_function(*spec, bs);
    const double ms = elapsed_ms(start);
    csv << format_double(v) << ',' << r.cost.expansion_terms << ','
        << format_double(r.cost.shots_per_term) << ',' << format_double(r.cost.total_shots) << ','
        << format_double(r.z_hat_original) << ',' << format_double(z) << ','
        << format_double(std::abs(r.z_hat_original - z) / z) << ',' << format_double(ms) << '\n';
  }
  if (cfg.csv_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(cfg.csv_path);
    if (!f) throw InputError("--csv: cannot write '" + cfg.csv_path + "'");
    f << csv.str();
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Entry point

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "exact") return cmd_exact(cfg, out);
  if (cfg.command == "plan") return cmd_plan(cfg, out);
  if (cfg.command == "estimate") return cmd_estimate(cfg, out);
  if (cfg.command == "relative") return cmd_relative(cfg, out);
  if (cfg.command == "validate") return cmd_validate(cfg, out);
  if (cfg.command == "bench") return cmd_bench(cfg, out);
  throw InputError("unknown command '" + cfg.command + "'");
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Partition-function estimation by simulated one-clean-qubit trace estimation",
               "pfdqc1"};
  app.require_subcommand(1);

  std::string method = "auto";
  std::string mode = "analytic";
  const auto add_common = [&](CLI::App* sub, bool needs_eps) {
    sub->add_option("--input", cfg.input_path, "Hamiltonian JSON file");
    sub->add_option("--beta", cfg.beta, "inverse temperature of the supplied Hamiltonian");
    if (needs_eps) {
      sub->add_option("--eps-abs", cfg.eps_abs, "additive error target");
      sub->add_option("--eps-rel", cfg.eps_rel, "relative error target");
    }
    sub->add_option("--delta", cfg.delta, "failure probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--method", method, "chebyshev, hst or auto")
        ->check(CLI::IsMember({"auto", "chebyshev", "hst"}));
    sub->add_option("--mode", mode, "analytic or sampled")->check(CLI::IsMember({"analytic", "sampled"}));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--shot-cap", cfg.shot_cap, "largest admissible shots per term");
    sub->add_option("--out", cfg.output_path, "write the JSON report here");
  };

  CLI::App* exact = app.add_subcommand("exact", "exact partition function");
  exact->add_option("--input", cfg.input_path, "Hamiltonian JSON file");
  exact->add_option("--beta", cfg.beta, "inverse temperature");
  exact->add_option("--out", cfg.output_path, "write the JSON report here");

  CLI::App* plan = app.add_subcommand("plan", "planned counts without running");
  add_common(plan, true);

  CLI::App* estimate = app.add_subcommand("estimate", "additive-error estimate");
  add_common(estimate, true);
  estimate->add_option("--z-max", cfg.z_max, "clamping ceiling for the working Z");
  estimate->add_flag("--timing", cfg.timing, "include wall-clock time in the report");

  CLI::App* relative = app.add_subcommand("relative", "relative-error estimate");
  add_common(relative, true);
  relative->add_option("--z-max", cfg.z_max, "upper bound for the working Z");
  relative->add_flag("--timing", cfg.timing, "include wall-clock time in the report");

  CLI::App* validate = app.add_subcommand("validate", "randomized property suites");
  validate->add_option("--seed", cfg.seed, "random seed");
  validate->add_option("--instances", cfg.instances, "random instances per property");
  validate->add_flag("--corrupt", cfg.corrupt, "perturb the walk operator (negative control)");
  validate->add_option("--out", cfg.output_path, "write the JSON report here");

  CLI::App* bench = app.add_subcommand("bench", "parameter sweep as CSV");
  add_common(bench, true);
  bench->add_option("--sweep", cfg.sweep, "beta, eps or m")->check(CLI::IsMember({"beta", "eps", "m"}));
  bench->add_option("--values", cfg.values, "sweep values")->delimiter(',');
  bench->add_option("--csv", cfg.csv_path, "write CSV here instead of stdout");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.method = method == "chebyshev" ? MethodChoice::Chebyshev
               : method == "hst"     ? MethodChoice::Hst
                                     : MethodChoice::Auto;
  cfg.mode = mode == "sampled" ? EstimationMode::Sampled : EstimationMode::Analytic;

  try {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw InputError("--delta must be in (0, 1)");
    if (!(cfg.shot_cap >= 1.0)) throw InputError("--shot-cap must be >= 1");
    return dispatch(cfg, out);
  } catch (const ShotCapExceeded& e) {
    Json j;
    j["command"] = cfg.command;
    j["error"] = e.what();
    j["infeasible"] = true;
    j["required_q"] = e.required_q();
    j["shot_cap"] = e.cap();
    out << to_json_text(j) << "\n";
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PropertyFailure& e) {
    err << "error: " << e.what() << "\n";
    return kPropertyFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace pfdqc1::cli
