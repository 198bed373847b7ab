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

// Partition-function estimators: the exact oracle, additive estimation through
// the Chebyshev walk or the Hubbard-Stratonovich evolutions, and the
// relative-error wrapper built from a sequence of additive estimates.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfdqc1/blockenc.hpp"
#include "pfdqc1/chebyshev.hpp"
#include "pfdqc1/dqc1.hpp"
#include "pfdqc1/hamiltonian.hpp"
#include "pfdqc1/hst.hpp"

namespace pfdqc1 {

enum class Method { Chebyshev, Hst };
enum class Clamp { None, Low, High };

inline const char* to_string(Method m) { return m == Method::Chebyshev ? "chebyshev" : "hst"; }
inline const char* to_string(Clamp c) {
  switch (c) {
    case Clamp::Low: return "low";
    case Clamp::High: return "high";
    default: return "none";
  }
}

// ---------------------------------------------------------------------------
// Exact oracle

/// Tr exp(-beta H) of the Hamiltonian as currently stored, without the offset.
inline double working_partition_function(const HamiltonianSpec& spec, double beta) {
  const EigenSystem es = eigh(to_dense(spec));
  double z = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) z += std::exp(-beta * es.values(i));
  return z;
}

/// Z of the originally supplied Hamiltonian; `beta` belongs to `spec`.
inline double exact_partition_function(const HamiltonianSpec& spec, double beta) {
  if (!(beta >= 0.0)) throw InputError("beta must be >= 0");
  return std::exp(spec.log_offset(beta)) * working_partition_function(spec, beta);
}

// ---------------------------------------------------------------------------
// Preparation

/// A spec brought into estimator form, and the factor mapping the caller's
/// beta onto it.
struct PreparedSpec {
  HamiltonianSpec spec;
  double beta_factor;
};

inline PreparedSpec prepare_spec(const HamiltonianSpec& spec, Method method) {
  HamiltonianSpec s = spec;
  if (method == Method::Chebyshev && s.kind() != HamiltonianKind::UnitarySum) {
    throw InputError("chebyshev method needs a unitary_sum Hamiltonian (got " +
                     std::string(to_string(s.kind())) + ")");
  }
  if (method == Method::Hst && s.kind() == HamiltonianKind::UnitarySum) s = shift_to_projectors(s);
  auto [normalized, factor] = normalize(s, 1.0);
  return {pad_to_power_of_two(normalized), factor};
}

// ---------------------------------------------------------------------------
// Reports

struct CostModel {
  Method method = Method::Chebyshev;
  int qubits = 0;
  std::size_t num_terms = 0;   // L after padding
  int m_prime = 0;             // ancilla register read out by the trace circuit
  int circuit_qubits = 0;      // n = m + 2 m'
  int hoeffding_exponent = 0;  // m + m'
  int expansion_terms = 0;     // K or J
  double delta_y = 0.0;        // HST only
  double beta = 0.0;
  double eps_abs = 0.0;
  double per_term_epsilon = 0.0;
  double delta0 = 0.0;
  double shots_per_term = 0.0;
  double total_shots = 0.0;
  double shot_cap = kDefaultShotCap;
  bool feasible = true;
  // Asymptotic, non-contractual indicators (gate cost C_H taken as 1).
  double cost_prefactor = 0.0;  // depends on beta, m, L
  double dominating_factor = 0.0;
  double additive_complexity = 0.0;
};

struct TermEstimate {
  int index = 0;
  double exact_trace = 0.0;
  double chi_hat = 0.0;
  std::uint64_t shots = 0;
};

struct RelativeRound {
  int r = 0;
  double threshold = 0.0;
  double eps_abs = 0.0;
  double delta_prime = 0.0;
  double estimate = 0.0;
  std::uint64_t shots = 0;
  int terms = 0;
};

struct RelativeTrace {
  int R = 0;
  double eps_rel = 0.0;
  double delta = 0.0;
  std::vector<RelativeRound> rounds;
};

struct EstimationReport {
  Method method = Method::Chebyshev;
  EstimationMode mode = EstimationMode::Analytic;
  int qubits = 0;
  double beta = 0.0;  // working beta
  double eps_abs = 0.0;
  double delta = 0.0;
  double z_max = 0.0;
  double y_hat = 0.0;
  double z_hat = 0.0;
  Clamp clamped = Clamp::None;
  std::vector<TermEstimate> per_term;
  std::uint64_t total_shots = 0;
  int total_terms = 0;
  CostModel cost;
  double log_offset = 0.0;
  double z_hat_original = 0.0;
  std::optional<RelativeTrace> relative;
};

struct AdditiveConfig {
  double eps_abs = 0.0;
  double delta = 0.1;
  std::optional<double> z_max;
  EstimationMode mode = EstimationMode::Analytic;
  double shot_cap = kDefaultShotCap;
  std::uint64_t seed = 0;
  std::uint64_t round = 0;

  void validate() const {
    if (!(eps_abs > 0.0)) throw InputError("eps_abs must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must be in (0, 1)");
    if (z_max && !(*z_max > 0.0)) throw InputError("z_max must be > 0");
  }
};

inline std::pair<double, Clamp> clamp_estimate(double y, double z_max) {
  if (y < 0.0) return {0.0, Clamp::Low};
  if (y >= z_max) return {z_max, y > z_max ? Clamp::High : Clamp::None};
  return {y, Clamp::None};
}

// ---------------------------------------------------------------------------
// Planning

namespace detail {

inline void require_prepared(const HamiltonianSpec& spec, HamiltonianKind kind, const char* who) {
  if (spec.kind() != kind) {
    throw InputError(std::string(who) + ": spec kind mismatch (expected " + to_string(kind) + ")");
  }
  if (spec.l1_norm() != 0.0 && !spec.is_normalized()) {
    throw InputError(std::string(who) + ": spec not normalized");
  }
  if (!spec.selection_qubits()) throw InputError(std::string(who) + ": spec not padded");
}

inline double log_or_zero(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace detail

/// Planned counts for a spec already in estimator form.
inline CostModel plan_cost(const HamiltonianSpec& prepared, double beta, double eps_abs,
                           double delta, Method method, double shot_cap = kDefaultShotCap) {
  if (!(eps_abs > 0.0)) throw InputError("eps_abs must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must be in (0, 1)");
  CostModel c;
  c.method = method;
  c.qubits = prepared.qubits();
  c.beta = beta;
  c.eps_abs = eps_abs;
  c.shot_cap = shot_cap;
  const int m = prepared.qubits();
  const double M = static_cast<double>(dim_of(m));
  if (method == Method::Chebyshev) {
    const std::size_t L = prepared.l1_norm() == 0.0 ? 2 : prepared.num_terms();
    c.num_terms = L;
    c.m_prime = ceil_log2(L) + 1;
    c.expansion_terms = chebyshev_order(m, beta, eps_abs);
    c.per_term_epsilon = eps_abs / (2.0 * std::exp(beta));
    const double l3 = std::pow(static_cast<double>(L), 3);
    c.cost_prefactor = std::exp(2.0 * beta) * M * M * l3 * (beta * beta + m * m);
    c.dominating_factor = std::pow(M * std::exp(beta) / eps_abs, 2) * l3;
  } else {
    const std::size_t L = prepared.num_terms();
    c.num_terms = L;
    c.m_prime = ceil_log2(L + 1);
    const HstPlan hp = plan_hst(m, beta, std::min(eps_abs, 1.0));
    c.expansion_terms = hp.J;
    c.delta_y = hp.delta_y;
    c.per_term_epsilon = eps_abs / 4.0;
    const double l3 = std::pow(static_cast<double>(std::max<std::size_t>(L, 1)), 3);
    c.cost_prefactor = M * M * l3 * m * (beta + m);
    c.dominating_factor = std::pow(M / eps_abs, 2) * l3;
  }
  c.additive_complexity = c.cost_prefactor * detail::log_or_zero(1.0 / delta) / (eps_abs * eps_abs);
  c.circuit_qubits = m + 2 * c.m_prime;
  c.hoeffding_exponent = m + c.m_prime;
  c.delta0 = delta / c.expansion_terms;
  c.shots_per_term = required_shots(c.hoeffding_exponent, c.per_term_epsilon, c.delta0);
  c.total_shots = c.shots_per_term * c.expansion_terms;
  c.feasible = c.shots_per_term <= shot_cap;
  return c;
}

/// Planned counts for any spec; `beta` belongs to `spec`.
inline CostModel cost_model(const HamiltonianSpec& spec, double beta, double eps_abs, double delta,
                            Method method, double shot_cap = kDefaultShotCap) {
  const PreparedSpec p = prepare_spec(spec, method);
  return plan_cost(p.spec, beta * p.beta_factor, eps_abs, delta, method, shot_cap);
}

// ---------------------------------------------------------------------------
// Additive estimators

namespace detail {

inline EstimationReport finish_report(EstimationReport rep, const HamiltonianSpec& spec) {
  const auto [z, clamp] = clamp_estimate(rep.y_hat, rep.z_max);
  rep.z_hat = z;
  rep.clamped = clamp;
  rep.log_offset = spec.log_offset(rep.beta);
  rep.z_hat_original = rep.z_hat * std::exp(rep.log_offset);
  rep.total_terms = static_cast<int>(rep.per_term.size());
  rep.total_shots = 0;
  for (const auto& t : rep.per_term) rep.total_shots += t.shots;
  return rep;
}

}  // namespace detail

/// Chebyshev / block-encoding estimator. `spec` must be a normalized, padded
/// unitary sum; `beta` belongs to it.
inline EstimationReport estimate_pf_chebyshev(const HamiltonianSpec& spec, double beta,
                                              const AdditiveConfig& cfg) {
  cfg.validate();
  detail::require_prepared(spec, HamiltonianKind::UnitarySum, "estimate_pf_chebyshev");
  const int m = spec.qubits();
  const double M = static_cast<double>(dim_of(m));
  const ChebyshevPlan plan = plan_chebyshev(m, beta, cfg.eps_abs);

  EstimationReport rep;
  rep.method = Method::Chebyshev;
  rep.mode = cfg.mode;
  rep.qubits = m;
  rep.beta = beta;
  rep.eps_abs = cfg.eps_abs;
  rep.delta = cfg.delta;
  rep.z_max = cfg.z_max.value_or(M * std::exp(beta));
  rep.cost = plan_cost(spec, beta, cfg.eps_abs, cfg.delta, Method::Chebyshev, cfg.shot_cap);
  if (cfg.mode == EstimationMode::Sampled && !rep.cost.feasible) {
    throw ShotCapExceeded(rep.cost.shots_per_term, cfg.shot_cap);
  }

  const BlockEncoding be = build_block_encoding(spec);
  const std::vector<double> traces = walk_block_traces(be, plan.K);
  double y = plan.coeffs[0] * M;
  for (int k = 1; k <= plan.K; ++k) {
    const TraceEstimate est = estimate_trace_value(
        traces[static_cast<std::size_t>(k)], m, be.m_prime, rep.cost.per_term_epsilon,
        rep.cost.delta0, cfg.mode, cfg.seed, term_stream(static_cast<std::uint64_t>(k), cfg.round),
        cfg.shot_cap);
    rep.per_term.push_back({k, traces[static_cast<std::size_t>(k)], est.value, est.shots_used});
    y += 2.0 * plan.coeffs[static_cast<std::size_t>(k)] * est.value;
  }
  rep.y_hat = y;
  return detail::finish_report(std::move(rep), spec);
}

/// Hubbard-Stratonovich / gap-amplification estimator. `spec` must be a
/// normalized, padded projector sum; `beta` belongs to it.
inline EstimationReport estimate_pf_hst(const HamiltonianSpec& spec, double beta,
                                        const AdditiveConfig& cfg) {
  cfg.validate();
  detail::require_prepared(spec, HamiltonianKind::ProjectorSum, "estimate_pf_hst");
  const int m = spec.qubits();
  const double M = static_cast<double>(dim_of(m));
  // the quadrature formulas hold for eps_abs <= 1; a finer grid is always valid
  const HstPlan plan = plan_hst(m, beta, std::min(cfg.eps_abs, 1.0));

  EstimationReport rep;
  rep.method = Method::Hst;
  rep.mode = cfg.mode;
  rep.qubits = m;
  rep.beta = beta;
  rep.eps_abs = cfg.eps_abs;
  rep.delta = cfg.delta;
  rep.z_max = cfg.z_max.value_or(M);
  rep.cost = plan_cost(spec, beta, cfg.eps_abs, cfg.delta, Method::Hst, cfg.shot_cap);
  if (cfg.mode == EstimationMode::Sampled && !rep.cost.feasible) {
    throw ShotCapExceeded(rep.cost.shots_per_term, cfg.shot_cap);
  }

  const GapAmplified ga = build_gap_amplified(spec);
  std::vector<double> chi(static_cast<std::size_t>(plan.J) + 1, 0.0);
  chi[0] = M;
  for (int j = 1; j <= plan.J; ++j) {
    const double exact = ga.evolve_block_trace(plan.times[static_cast<std::size_t>(j)]).real();
    const TraceEstimate est = estimate_trace_value(
        exact, m, ga.m1, rep.cost.per_term_epsilon, rep.cost.delta0, cfg.mode, cfg.seed,
        term_stream(static_cast<std::uint64_t>(j), cfg.round), cfg.shot_cap);
    chi[static_cast<std::size_t>(j)] = est.value;
    rep.per_term.push_back({j, exact, est.value, est.shots_used});
  }
  rep.y_hat = hst_trace_combination(chi, plan, M);
  return detail::finish_report(std::move(rep), spec);
}

inline EstimationReport estimate_pf(const HamiltonianSpec& prepared, double beta, Method method,
                                    const AdditiveConfig& cfg) {
  return method == Method::Chebyshev ? estimate_pf_chebyshev(prepared, beta, cfg)
                                     : estimate_pf_hst(prepared, beta, cfg);
}

// ---------------------------------------------------------------------------
// Relative error from additive estimates

struct RoundRequest {
  int r = 0;
  double eps_abs = 0.0;
  double delta_prime = 0.0;
  double x_max = 0.0;
};

struct RelativeResult {
  double x_hat = 0.0;
  int R = 0;
  std::vector<RelativeRound> rounds;
};

class RoundCapExceeded : public NumericalError {
 public:
  RoundCapExceeded(int cap, std::vector<RelativeRound> rounds)
      : NumericalError("relative estimation did not stop within " + std::to_string(cap) +
                       " rounds"),
        rounds_(std::move(rounds)) {}
  const std::vector<RelativeRound>& rounds() const noexcept { return rounds_; }

 private:
  std::vector<RelativeRound> rounds_;
};

/// delta'(r) = (6 / pi^2) delta / r^2; the product of (1 - delta'(r)) is >= 1 - delta.
inline double round_failure_budget(int r, double delta) {
  return 6.0 / (std::numbers::pi * std::numbers::pi) * delta / (static_cast<double>(r) * r);
}

inline constexpr int kDefaultRoundCap = 64;

/// Runs additive estimates with thresholds X_r = x_max / 2^r and targets
/// eps_rel X_r / 2 until an estimate clears its threshold. `estimate` maps a
/// RoundRequest to an estimate in [0, x_max].
template <class Estimate>
  requires std::invocable<Estimate&, const RoundRequest&>
RelativeResult estimate_relative(Estimate&& estimate, double eps_rel, double delta, double x_max,
                                 int round_cap = kDefaultRoundCap) {
  if (!(eps_rel > 0.0 && eps_rel <= 1.0)) throw InputError("eps_rel must be in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must be in (0, 1)");
  if (!(x_max > 0.0)) throw InputError("x_max must be > 0");
  RelativeResult out;
  double threshold = x_max;
  double x_hat = 0.0;
  int r = 0;
  while (threshold > x_hat) {
    if (r >= round_cap) throw RoundCapExceeded(round_cap, std::move(out.rounds));
    ++r;
    threshold = x_max / std::exp2(r);
    RoundRequest req{r, eps_rel * threshold / 2.0, round_failure_budget(r, delta), x_max};
    x_hat = static_cast<double>(estimate(req));
    out.rounds.push_back({r, threshold, req.eps_abs, req.delta_prime, x_hat, 0, 0});
  }
  out.x_hat = x_hat;
  out.R = r;
  return out;
}

struct RelativeConfig {
  double eps_rel = 0.1;
  double delta = 0.1;
  EstimationMode mode = EstimationMode::Analytic;
  std::uint64_t seed = 0;
  double shot_cap = kDefaultShotCap;
  std::optional<double> z_max;
  int round_cap = kDefaultRoundCap;
};

/// Relative-error partition function of `spec` at `beta` (which belongs to
/// `spec`). The returned report is the last round's, with the round trace
/// attached and z_hat_original referring to the supplied Hamiltonian.
inline EstimationReport solve_pfp(const HamiltonianSpec& spec, double beta, Method method,
                                  const RelativeConfig& cfg) {
  const PreparedSpec p = prepare_spec(spec, method);
  const double wbeta = beta * p.beta_factor;
  const double M = static_cast<double>(p.spec.dim());
  const double z_max = cfg.z_max.value_or(method == Method::Chebyshev ? M * std::exp(wbeta) : M);
  std::vector<EstimationReport> reports;
  const auto run_round = [&](const RoundRequest& req) {
    AdditiveConfig a;
    a.eps_abs = req.eps_abs;
    a.delta = req.delta_prime;
    a.z_max = req.x_max;
    a.mode = cfg.mode;
    a.shot_cap = cfg.shot_cap;
    a.seed = cfg.seed;
    a.round = static_cast<std::uint64_t>(req.r);
    reports.push_back(estimate_pf(p.spec, wbeta, method, a));
    return reports.back().z_hat;
  };
  RelativeResult res = estimate_relative(run_round, cfg.eps_rel, cfg.delta, z_max, cfg.round_cap);
  for (std::size_t i = 0; i < res.rounds.size(); ++i) {
    res.rounds[i].shots = reports[i].total_shots;
    res.rounds[i].terms = reports[i].total_terms;
  }
  EstimationReport final_report = reports.back();
  final_report.relative = RelativeTrace{res.R, cfg.eps_rel, cfg.delta, std::move(res.rounds)};
  return final_report;
}

}  // namespace pfdqc1
