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

// Randomized property suites run by `pfdqc1 validate`. Each check reports a
// measured residual against its threshold.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pfdqc1/blockenc.hpp"
#include "pfdqc1/chebyshev.hpp"
#include "pfdqc1/dqc1.hpp"
#include "pfdqc1/estimators.hpp"
#include "pfdqc1/hamiltonian.hpp"
#include "pfdqc1/hst.hpp"
#include "pfdqc1/random.hpp"

namespace pfdqc1 {

struct PropertyResult {
  std::string name;
  std::string module;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidateOptions {
  std::uint64_t seed = 20260101;
  int instances = 4;                    // random instances per property
  bool corrupt_block_encoding = false;  // negative control for the walk identity
};

namespace props {

inline PropertyResult make(std::string name, std::string module, double residual,
                           double threshold, std::string detail = {}, bool extra_ok = true) {
  const bool ok = extra_ok && std::isfinite(residual) && residual <= threshold;
  return {std::move(name), std::move(module), residual, threshold, ok, std::move(detail)};
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// --- hamiltonian -----------------------------------------------------------

inline PropertyResult pauli_involution(const ValidateOptions&) {
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const auto id = DenseOperator::identity(m);
    const std::size_t count = std::size_t{1} << (2 * m);
    for (std::size_t code = 0; code < count; ++code) {
      std::string s;
      for (int q = 0; q < m; ++q) s.push_back("IXYZ"[(code >> (2 * q)) & 3U]);
      const DenseOperator p = PauliString(s).to_dense();
      worst = std::max(worst, max_abs(p * p - id));
    }
  }
  return make("pauli_involution", "hamiltonian", worst, 1e-12, "all strings with m <= 3");
}

inline PropertyResult normalize_invariance(const ValidateOptions& o) {
  Rng rng(o.seed + 1);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const int m = 1 + i % 4;
    const HamiltonianSpec s = random_unitary_sum(m, 2 + static_cast<std::size_t>(i % 3), rng);
    const double beta = 0.3 + 0.7 * i;
    const auto [n1, b1] = normalize(s, beta);
    const auto [n2, b2] = normalize(n1, b1);
    worst = std::max(worst, std::abs(b2 - b1) + std::abs(n2.l1_norm() - n1.l1_norm()));
    for (std::size_t l = 0; l < n1.num_terms(); ++l) {
      worst = std::max(worst, std::abs(n1.terms()[l].coeff - n2.terms()[l].coeff));
    }
    const double z = working_partition_function(s, beta);
    const double zn = working_partition_function(n1, b1);
    worst = std::max(worst, std::abs(z - zn) / z);
  }
  return make("normalize_invariance", "hamiltonian", worst, 1e-10,
              "idempotence and Tr exp(-beta H) under rescaling");
}

inline PropertyResult projector_shift_bounds(const ValidateOptions& o) {
  Rng rng(o.seed + 2);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const HamiltonianSpec s = random_unitary_sum(1 + i % 4, 1 + static_cast<std::size_t>(i % 4), rng);
    const HamiltonianSpec p = normalize(shift_to_projectors(s), 1.0).first;
    const EigenSystem es = eigh(to_dense(p));
    worst = std::max({worst, -es.values(0), es.values(es.values.size() - 1) - 1.0});
  }
  return make("projector_shift_bounds", "hamiltonian", std::max(worst, 0.0), 1e-12,
              "lambda_min >= 0 and ||H|| <= 1 after shift and normalization");
}

inline PropertyResult local_decomposition_reconstruction(const ValidateOptions& o) {
  Rng rng(o.seed + 3);
  double worst = 0.0;
  bool nonneg = true;
  for (int i = 0; i < o.instances; ++i) {
    const int m = 3 + i % 2;
    const auto locals = random_local_terms(m, 2, 3, rng);
    const LocalDecomposition d = decompose_local_terms(locals, m);
    DenseOperator h(m);
    for (const auto& lt : locals) h += embed_local(lt.matrix, lt.support, m);
    const DenseOperator expect =
        (h - DenseOperator::identity(m) * Complex(d.lambda)) * Complex(1.0 / d.norm_scale);
    worst = std::max(worst, max_abs(expect - to_dense(d.spec)));
    for (const auto& t : d.spec.terms()) nonneg = nonneg && t.coeff >= 0.0;
  }
  return make("local_decomposition_reconstruction", "hamiltonian", worst, 1e-10,
              nonneg ? "" : "negative coefficient", nonneg);
}

// --- densemath -------------------------------------------------------------

inline PropertyResult eigh_reconstruction(const ValidateOptions& o) {
  Rng rng(o.seed + 4);
  double worst = 0.0;
  for (int q = 1; q <= 6; ++q) {
    const DenseOperator a = random_hermitian(q, rng);
    const EigenSystem es = eigh(a);
    const DenseOperator back = spectral_apply(es, [](double x) { return Complex(x); });
    worst = std::max(worst, spectral_norm(a - back) / spectral_norm(a));
  }
  return make("eigh_reconstruction", "densemath", worst, 1e-8, "dims 2..64");
}

inline PropertyResult unitary_evolution(const ValidateOptions& o) {
  Rng rng(o.seed + 5);
  double worst = 0.0;
  for (double t : {-100.0, -3.7, 0.25, 17.0, 100.0}) {
    const DenseOperator a = random_hermitian(3, rng);
    const DenseOperator u = herm_func(a, [t](double x) { return std::exp(-kI * (t * x)); });
    worst = std::max(worst, max_abs(u.adjoint() * u - DenseOperator::identity(3)));
  }
  return make("unitary_evolution", "densemath", worst, 1e-9, "|t| <= 100");
}

inline PropertyResult trace_norm_unitary_invariance(const ValidateOptions& o) {
  Rng rng(o.seed + 6);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const int q = 1 + i % 4;
    const DenseOperator a(q, ginibre(static_cast<Eigen::Index>(dim_of(q)),
                                     static_cast<Eigen::Index>(dim_of(q)), rng));
    const DenseOperator u = random_unitary(q, rng);
    const DenseOperator v = random_unitary(q, rng);
    worst = std::max(worst, std::abs(trace_norm(u * a * v) - trace_norm(a)));
  }
  return make("trace_norm_unitary_invariance", "densemath", worst, 1e-8);
}

// --- dqc1 ------------------------------------------------------------------

inline PropertyResult extended_circuit_trace(const ValidateOptions& o) {
  Rng rng(o.seed + 7);
  double worst = 0.0;
  for (int total = 2; total <= 5; ++total) {
    for (int anc = 1; anc < total; ++anc) {
      const DenseOperator w = random_unitary(total, rng);
      const DenseOperator v = extended_circuit(w, anc);
      const Complex lhs = v.trace() / static_cast<double>(dim_of(anc));
      worst = std::max(worst, std::abs(lhs - block_trace(w, anc)));
    }
  }
  return make("extended_circuit_trace", "dqc1", worst, 1e-10, "m + m_anc <= 5");
}

inline PropertyResult sigma_x_bounded(const ValidateOptions& o) {
  Rng rng(o.seed + 8);
  double worst_excess = 0.0;
  double worst_sim = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const int n = 1 + i % 4;
    const DenseOperator v = random_unitary(n, rng);
    const double sim = simulate_trace_circuit(v);
    worst_sim = std::max(worst_sim, std::abs(sim - v.trace().real() / static_cast<double>(v.dim())));
    worst_excess = std::max(worst_excess, std::abs(sim) - 1.0);
  }
  return make("sigma_x_bounded", "dqc1", std::max(worst_excess, 0.0), 1e-12,
              "circuit vs Re Tr V / 2^n residual " + fmt(worst_sim), worst_sim <= 1e-10);
}

inline PropertyResult hoeffding_coverage(const ValidateOptions& o) {
  Rng rng(o.seed + 9);
  const DenseOperator w = random_unitary(2, rng);
  const double exact = block_trace(w, 1).real();
  const double eps = 0.25;
  const double delta0 = 0.1;
  const ShotPlan plan = plan_shots(2, eps, delta0);
  const int trials = 100 * o.instances;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    const TraceEstimate e = sample_trace(w, 1, plan, o.seed, static_cast<std::uint64_t>(t));
    if (std::abs(e.value - exact) > eps) ++failures;
  }
  const double freq = static_cast<double>(failures) / trials;
  return make("hoeffding_coverage", "dqc1", freq, delta0 + 3.0 * std::sqrt(delta0 / trials),
              "Q = " + std::to_string(plan.Q) + ", trials = " + std::to_string(trials));
}

inline PropertyResult sampling_unbiased(const ValidateOptions& o) {
  Rng rng(o.seed + 10);
  const DenseOperator w = random_unitary(3, rng);
  const double ex = sigma_x_expectation(w, 1);
  const double scale = static_cast<double>(dim_of(3));
  const std::uint64_t Q = 200;
  const int trials = 100 * o.instances;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) sum += scale * sample_sigma_x(ex, Q, o.seed + 1, static_cast<std::uint64_t>(t));
  const double mean = sum / trials;
  const double se = scale * std::sqrt(std::max(1.0 - ex * ex, 1e-12) / (static_cast<double>(Q) * trials));
  return make("sampling_unbiased", "dqc1", std::abs(mean - scale * ex) / se, 3.0,
              "deviation in standard errors");
}

// --- chebyshev -------------------------------------------------------------

inline PropertyResult bessel_recurrence(const ValidateOptions&) {
  double worst = 0.0;
  for (double beta = 0.1; beta <= 20.0 + 1e-9; beta += 0.7) {
    const int K = chebyshev_order(4, beta, 1e-4);
    for (int k = 1; k <= K; ++k) {
      const double ik = bessel_i(k, beta);
      const double lhs = bessel_i(k - 1, beta) - bessel_i(k + 1, beta);
      const double rhs = 2.0 * k / beta * ik;
      const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
      if (rhs < 1e-280) continue;  // underflow region
      worst = std::max(worst, std::abs(lhs - rhs) / denom);
    }
  }
  return make("bessel_recurrence", "chebyshev", worst, 1e-9, "beta in [0.1, 20], k <= K");
}

inline PropertyResult scalar_chebyshev_expansion(const ValidateOptions&) {
  double worst = 0.0;
  for (int m : {1, 3}) {
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      const ChebyshevPlan plan = plan_chebyshev(m, beta, 1e-4);
      const double bound = tail_bound(plan, m) / static_cast<double>(dim_of(m));
      for (int g = 0; g <= 200; ++g) {
        const double th = std::numbers::pi * g / 200.0;
        double s = plan.coeffs[0];
        for (int k = 1; k <= plan.K; ++k) s += 2.0 * plan.coeffs[static_cast<std::size_t>(k)] * std::cos(k * th);
        worst = std::max(worst, std::abs(s - std::exp(-beta * std::cos(th))) / bound);
      }
    }
  }
  return make("scalar_chebyshev_expansion", "chebyshev", worst, 1.0, "error / (tail bound / 2^m)");
}

inline PropertyResult chebyshev_operator_bound(const ValidateOptions& o) {
  Rng rng(o.seed + 11);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const int m = 1 + i % 4;
    const DenseOperator h = random_hermitian(m, rng);
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      for (double eps : {1e-2, 1e-4}) {
        const ChebyshevPlan plan = plan_chebyshev(m, beta, eps);
        const DenseOperator exact = herm_func(h, [beta](double x) { return std::exp(-beta * x); });
        worst = std::max(worst, trace_norm(build_s_k(h, plan) - exact) / (eps / 2.0));
      }
    }
  }
  return make("chebyshev_operator_bound", "chebyshev", worst, 1.0, "trace-norm error / (eps_abs/2)");
}

inline PropertyResult bessel_partial_sum_bound(const ValidateOptions&) {
  double worst = 0.0;
  for (double beta : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const ChebyshevPlan plan = plan_chebyshev(4, beta, 1e-6);
    double s = 0.0;
    for (int k = 1; k <= plan.K; ++k) s += std::abs(plan.coeffs[static_cast<std::size_t>(k)]);
    worst = std::max(worst, s / (std::exp(beta) / 2.0));
  }
  return make("bessel_partial_sum_bound", "chebyshev", worst, 1.0, "sum_k I_k / (e^beta / 2)");
}

// --- hst -------------------------------------------------------------------

inline PropertyResult quadrature_step_condition(const ValidateOptions&) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 4; ++m) {
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      for (double eps : {1e-1, 1e-2, 1e-4}) {
        const HstPlan plan = plan_hst(m, beta, eps);
        const double e = eps / (4.0 * static_cast<double>(dim_of(m)));
        const double need = std::sqrt(2.0 * beta) + std::sqrt(2.0 * std::log(5.0 / e));
        worst = std::max(worst, need / (2.0 * std::numbers::pi / plan.delta_y));
      }
    }
  }
  return make("quadrature_step_condition", "hst", worst, 1.0, "required / actual 2 pi / dy");
}

inline PropertyResult quadrature_truncation_tail(const ValidateOptions&) {
  double worst = 0.0;
  for (int m = 1; m <= 4; ++m) {
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      for (double eps : {1e-1, 1e-2, 1e-4}) {
        const HstPlan plan = plan_hst(m, beta, eps);
        const double e = eps / (4.0 * static_cast<double>(dim_of(m)));
        double tail = 0.0;
        for (int j = plan.J + 1; j <= 4 * plan.J; ++j) {
          const double y = plan.y(j);
          tail += 2.0 * std::exp(-0.5 * y * y);
        }
        tail *= plan.delta_y / std::sqrt(2.0 * std::numbers::pi);
        worst = std::max(worst, tail / (e / 2.0));
      }
    }
  }
  return make("quadrature_truncation_tail", "hst", worst, 1.0, "tail / (eps/2)");
}

inline PropertyResult scalar_quadrature_grid_error(const ValidateOptions&) {
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      for (double eps : {1e-2, 1e-4}) {
        const HstPlan plan = plan_hst(m, beta, eps);
        const double bound = eps / (4.0 * static_cast<double>(dim_of(m)));
        for (int g = 0; g <= 1000; ++g) {
          const double lam = g / 1000.0;
          worst = std::max(worst, std::abs(scalar_quadrature(plan, lam) - std::exp(-beta * lam)) / bound);
        }
      }
    }
  }
  return make("scalar_quadrature_grid_error", "hst", worst, 1.0, "max error / (eps_abs / 4M)");
}

inline PropertyResult quadrature_conjugate_symmetry(const ValidateOptions&) {
  double worst = 0.0;
  for (double beta : {0.5, 2.0, 5.0}) {
    const HstPlan plan = plan_hst(2, beta, 1e-3);
    for (int g = 0; g <= 50; ++g) {
      const double r = std::sqrt(g / 50.0);
      Complex s{0.0, 0.0};
      for (int j = -plan.J; j <= plan.J; ++j) {
        const auto a = static_cast<std::size_t>(std::abs(j));
        const double t = (j < 0 ? -1.0 : 1.0) * plan.times[a];
        s += plan.weights[a] * std::exp(-kI * (t * r));
      }
      worst = std::max(worst, std::abs(s.imag()));
    }
  }
  return make("quadrature_conjugate_symmetry", "hst", worst, 1e-12, "imaginary residue");
}

// --- blockenc --------------------------------------------------------------

inline HamiltonianSpec prepared_unitary_sum(int m, std::size_t L, Rng& rng) {
  return pad_to_power_of_two(normalize(random_unitary_sum(m, L, rng), 1.0).first);
}

inline HamiltonianSpec prepared_projector_sum(int m, std::size_t L, Rng& rng) {
  return pad_to_power_of_two(normalize(random_projector_sum(m, L, rng), 1.0).first);
}

inline PropertyResult walk_chebyshev_identity(const ValidateOptions& o) {
  Rng rng(o.seed + 12);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const int m = 1 + i % 3;
    const HamiltonianSpec s = prepared_unitary_sum(m, 1 + static_cast<std::size_t>(i % 4), rng);
    BlockEncoding be = build_block_encoding(s);
    if (o.corrupt_block_encoding) be.W_H.matrix()(0, 1) += 0.05;
    const DenseOperator h = to_dense(s);
    const auto blocks = walk_blocks(be, 20);
    for (int k = 0; k <= 20; ++k) {
      worst = std::max(worst, spectral_norm(blocks[static_cast<std::size_t>(k)] - chebyshev_op(h, k)));
    }
  }
  return make("walk_chebyshev_identity", "blockenc", worst, 1e-8,
              o.corrupt_block_encoding ? "corrupted walk operator" : "k <= 20, m <= 3, L <= 4");
}

inline Vector with_zero_selection(const Vector& phi, int m1) {
  const Eigen::Index dsel = Eigen::Index{1} << m1;
  Vector out = Vector::Zero(phi.size() * dsel);
  for (Eigen::Index i = 0; i < phi.size(); ++i) out(i * dsel) = phi(i);
  return out;
}

inline PropertyResult gap_amplification_identity(const ValidateOptions& o) {
  Rng rng(o.seed + 13);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const int m = 1 + i % 3;
    const HamiltonianSpec s = prepared_projector_sum(m, 1 + static_cast<std::size_t>(i % 3), rng);
    const GapAmplified ga = build_gap_amplified(s);
    const DenseOperator h = to_dense(s);
    const Matrix hp2 = ga.H_prime.matrix() * ga.H_prime.matrix();
    for (int k = 0; k < 50; ++k) {
      const Vector phi = random_state(s.dim(), rng);
      const Vector lhs = hp2 * with_zero_selection(phi, ga.m1);
      const Vector rhs = with_zero_selection(h.matrix() * phi, ga.m1);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return make("gap_amplification_identity", "blockenc", worst, 1e-9, "50 random states per spec");
}

inline PropertyResult gap_amplification_decomposition(const ValidateOptions& o) {
  Rng rng(o.seed + 14);
  double recon = 0.0;
  double unit = 0.0;
  std::size_t most = 0;
  for (int i = 0; i < o.instances; ++i) {
    const HamiltonianSpec s = prepared_projector_sum(1 + i % 3, 1 + static_cast<std::size_t>(i % 3), rng);
    const GapAmplified ga = build_gap_amplified(s);
    DenseOperator sum(ga.H_prime.qubits());
    for (const auto& t : ga.unitary_terms) {
      sum += t.unitary * t.coeff;
      unit = std::max(unit, max_abs(t.unitary.adjoint() * t.unitary - DenseOperator::identity(t.unitary.qubits())));
    }
    recon = std::max(recon, max_abs(sum - ga.H_prime));
    most = std::max(most, ga.unitary_terms.size());
  }
  return make("gap_amplification_decomposition", "blockenc", std::max(recon, unit), 1e-9,
              std::to_string(most) + " unitaries", most <= 8);
}

inline PropertyResult quadrature_trace_transfer(const ValidateOptions& o) {
  Rng rng(o.seed + 15);
  double worst = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const HamiltonianSpec s = prepared_projector_sum(1 + i % 3, 1 + static_cast<std::size_t>(i % 3), rng);
    const GapAmplified ga = build_gap_amplified(s);
    const HstPlan plan = plan_hst(s.qubits(), 0.5 + i, 1e-2);
    std::vector<double> traces(static_cast<std::size_t>(plan.J) + 1);
    for (int j = 0; j <= plan.J; ++j) {
      traces[static_cast<std::size_t>(j)] = block_trace(evolve(ga, plan.times[static_cast<std::size_t>(j)]), ga.m1).real();
    }
    const double lhs = hst_trace_combination(traces, plan, static_cast<double>(s.dim()));
    const double rhs = build_x_j(to_dense(s), plan).trace().real();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return make("quadrature_trace_transfer", "blockenc", worst, 1e-9, "exact evolutions");
}

inline PropertyResult unitarity_and_hermiticity(const ValidateOptions& o) {
  Rng rng(o.seed + 16);
  double unit = 0.0;
  double herm = 0.0;
  const auto dev = [](const DenseOperator& u) {
    return max_abs(u.adjoint() * u - DenseOperator::identity(u.qubits()));
  };
  for (int i = 0; i < o.instances; ++i) {
    const BlockEncoding be = build_block_encoding(prepared_unitary_sum(1 + i % 3, 1 + static_cast<std::size_t>(i % 4), rng));
    unit = std::max({unit, dev(be.W_H), dev(be.G_tilde), dev(be.U_prime)});
    const GapAmplified ga = build_gap_amplified(prepared_projector_sum(1 + i % 3, 1 + static_cast<std::size_t>(i % 3), rng));
    unit = std::max({unit, dev(evolve(ga, 0.7)), dev(evolve(ga, 90.0))});
    herm = std::max(herm, max_abs(ga.H_prime - ga.H_prime.adjoint()));
  }
  return make("unitarity_and_hermiticity", "blockenc", unit, 1e-9,
              "H' hermiticity residual " + fmt(herm), herm <= 1e-10);
}

// --- estimators ------------------------------------------------------------

inline PropertyResult additive_chain_chebyshev(const ValidateOptions& o) {
  Rng rng(o.seed + 17);
  double worst = 0.0;
  double chain = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const HamiltonianSpec s = prepared_unitary_sum(1 + i % 3, 1 + static_cast<std::size_t>(i % 4), rng);
    const double beta = std::array{0.5, 1.0, 2.0}[static_cast<std::size_t>(i % 3)];
    AdditiveConfig cfg;
    cfg.eps_abs = 1e-3;
    const EstimationReport r = estimate_pf_chebyshev(s, beta, cfg);
    const double tr_s = build_s_k(to_dense(s), plan_chebyshev(s.qubits(), beta, cfg.eps_abs)).trace().real();
    chain = std::max(chain, std::abs(r.y_hat - tr_s) / std::max(1.0, std::abs(tr_s)));
    worst = std::max(worst, std::abs(r.z_hat - working_partition_function(s, beta)) / (cfg.eps_abs / 2.0));
  }
  return make("additive_chain_chebyshev", "estimators", worst, 1.0,
              "|Z^ - Z| / (eps_abs/2); |Y^ - Tr S_K| " + fmt(chain), chain <= 1e-9);
}

inline PropertyResult additive_chain_hst(const ValidateOptions& o) {
  Rng rng(o.seed + 18);
  double worst = 0.0;
  double chain = 0.0;
  for (int i = 0; i < o.instances; ++i) {
    const HamiltonianSpec s = prepared_projector_sum(1 + i % 3, 1 + static_cast<std::size_t>(i % 3), rng);
    const double beta = std::array{0.5, 1.0, 2.0}[static_cast<std::size_t>(i % 3)];
    AdditiveConfig cfg;
    cfg.eps_abs = 1e-3;
    const EstimationReport r = estimate_pf_hst(s, beta, cfg);
    const double tr_x = build_x_j(to_dense(s), plan_hst(s.qubits(), beta, cfg.eps_abs)).trace().real();
    chain = std::max(chain, std::abs(r.y_hat - tr_x) / std::max(1.0, std::abs(tr_x)));
    worst = std::max(worst, std::abs(r.z_hat - working_partition_function(s, beta)) / (cfg.eps_abs / 2.0));
  }
  return make("additive_chain_hst", "estimators", worst, 1.0,
              "|Z^ - Z| / (eps_abs/2); |Y^ - Tr X_J| " + fmt(chain), chain <= 1e-9);
}

inline PropertyResult clamping(const ValidateOptions& o) {
  int violations = 0;
  const auto expect = [&](double y, double zmax, double z, Clamp c) {
    const auto [zz, cc] = clamp_estimate(y, zmax);
    if (zz != z || cc != c) ++violations;
  };
  expect(-0.5, 4.0, 0.0, Clamp::Low);
  expect(9.0, 4.0, 4.0, Clamp::High);
  expect(2.5, 4.0, 2.5, Clamp::None);
  expect(4.0, 4.0, 4.0, Clamp::None);
  Rng rng(o.seed + 19);
  const HamiltonianSpec s = prepared_unitary_sum(2, 2, rng);
  AdditiveConfig cfg;
  cfg.eps_abs = 1e-2;
  cfg.z_max = 0.5;
  const EstimationReport r = estimate_pf_chebyshev(s, 1.0, cfg);
  if (r.z_hat != 0.5 || r.clamped != Clamp::High) ++violations;
  return make("clamping", "estimators", violations, 0.0, "output in [0, Z_max]");
}

inline PropertyResult wrapper_confidence_product(const ValidateOptions&) {
  double worst = -1.0;
  bool monotone = true;
  for (double delta : {0.01, 0.1, 0.5, 0.9}) {
    double prod = 1.0;
    double prev = 1.0;
    for (int r = 1; r <= 10000; ++r) {
      prod *= 1.0 - round_failure_budget(r, delta);
      monotone = monotone && prod <= prev;
      prev = prod;
    }
    worst = std::max(worst, (1.0 - delta) - prod);
  }
  return make("wrapper_confidence_product", "estimators", worst, 0.0,
              "(1 - delta) - prod_{r <= 1e4} (1 - delta'(r))", monotone);
}

/// Additive mock: X plus Gaussian noise with Pr(|noise| > eps_abs) = delta',
/// clamped to [0, x_max].
struct CalibratedMock {
  double x;
  Rng* rng;
  double operator()(const RoundRequest& req) const {
    const double sigma = req.eps_abs / normal_quantile(1.0 - req.delta_prime / 2.0);
    const double v = x + std::normal_distribution<double>(0.0, sigma)(*rng);
    return std::clamp(v, 0.0, req.x_max);
  }
};

/// Index q with q + 1 >= log2(X_max / X) + log2(3/2) > q.
inline int stopping_reference(double x_max, double x) {
  return static_cast<int>(std::ceil(std::log2(x_max / x) + std::log2(1.5))) - 1;
}

inline double stopping_tail_bound(int excess) {
  const int e = excess - 1;
  return std::pow(6.0 / (std::numbers::pi * std::numbers::pi), e) / std::tgamma(e + 1.0);
}

inline PropertyResult stopping_tail(const ValidateOptions& o) {
  Rng rng(o.seed + 20);
  const double x_max = 1.0;
  const double x = x_max / std::exp2(3.3);
  const int q = stopping_reference(x_max, x);
  const int trials = 125 * o.instances;
  int ge2 = 0;
  int ge3 = 0;
  for (int t = 0; t < trials; ++t) {
    const RelativeResult res = estimate_relative(CalibratedMock{x, &rng}, 0.5, 0.5, x_max);
    ge2 += res.R >= q + 2;
    ge3 += res.R >= q + 3;
  }
  double margin = -1.0;
  for (auto [count, excess] : {std::pair{ge2, 2}, std::pair{ge3, 3}}) {
    const double b = stopping_tail_bound(excess);
    const double slack = 3.0 * std::sqrt(b * (1.0 - b) / trials);
    margin = std::max(margin, static_cast<double>(count) / trials - (b + slack));
  }
  return make("stopping_tail", "estimators", margin, 0.0,
              "Pr(R >= q+2), Pr(R >= q+3) minus bound with slack");
}

inline PropertyResult relative_error_algebra(const ValidateOptions& o) {
  Rng rng(o.seed + 21);
  int violations = 0;
  int checked = 0;
  for (int t = 0; t < 50 * o.instances; ++t) {
    const double x = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    const double eps = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const RelativeResult res = estimate_relative(CalibratedMock{x, &rng}, eps, 0.3, 1.0);
    const double err = std::abs(res.x_hat - x);
    if (err <= eps * res.x_hat / 2.0) {
      ++checked;
      if (err > eps * x) ++violations;
    }
  }
  return make("relative_error_algebra", "estimators", violations, 0.0,
              std::to_string(checked) + " successful traces checked");
}

// --- cli -------------------------------------------------------------------

inline PropertyResult spec_round_trip(const ValidateOptions& o) {
  Rng rng(o.seed + 22);
  int violations = 0;
  for (int i = 0; i < o.instances; ++i) {
    const HamiltonianSpec a = random_unitary_sum(1 + i % 3, 3, rng);
    const HamiltonianSpec b = random_projector_sum(1 + i % 2, 2, rng);
    for (const HamiltonianSpec& s :
         {a, b, prepared_unitary_sum(2, 3, rng), normalize(shift_to_projectors(a), 2.0).first}) {
      if (!(parse_spec(serialize(s)) == s)) ++violations;
    }
  }
  return make("spec_round_trip", "cli", violations, 0.0, "parse(serialize(spec)) == spec");
}

}  // namespace props

struct PropertyCheck {
  const char* name;
  PropertyResult (*run)(const ValidateOptions&);
};

#define PFDQC1_CHECK(fn) PropertyCheck{#fn, props::fn}

inline const std::vector<PropertyCheck>& property_checks() {
  static const std::vector<PropertyCheck> checks = {
      PFDQC1_CHECK(pauli_involution),
      PFDQC1_CHECK(normalize_invariance),
      PFDQC1_CHECK(projector_shift_bounds),
      PFDQC1_CHECK(local_decomposition_reconstruction),
      PFDQC1_CHECK(eigh_reconstruction),
      PFDQC1_CHECK(unitary_evolution),
      PFDQC1_CHECK(trace_norm_unitary_invariance),
      PFDQC1_CHECK(bessel_recurrence),
      PFDQC1_CHECK(scalar_chebyshev_expansion),
      PFDQC1_CHECK(chebyshev_operator_bound),
      PFDQC1_CHECK(bessel_partial_sum_bound),
      PFDQC1_CHECK(quadrature_step_condition),
      PFDQC1_CHECK(quadrature_truncation_tail),
      PFDQC1_CHECK(scalar_quadrature_grid_error),
      PFDQC1_CHECK(quadrature_conjugate_symmetry),
      PFDQC1_CHECK(walk_chebyshev_identity),
      PFDQC1_CHECK(gap_amplification_identity),
      PFDQC1_CHECK(gap_amplification_decomposition),
      PFDQC1_CHECK(quadrature_trace_transfer),
      PFDQC1_CHECK(unitarity_and_hermiticity),
      PFDQC1_CHECK(extended_circuit_trace),
      PFDQC1_CHECK(hoeffding_coverage),
      PFDQC1_CHECK(sampling_unbiased),
      PFDQC1_CHECK(sigma_x_bounded),
      PFDQC1_CHECK(additive_chain_chebyshev),
      PFDQC1_CHECK(additive_chain_hst),
      PFDQC1_CHECK(clamping),
      PFDQC1_CHECK(wrapper_confidence_product),
      PFDQC1_CHECK(stopping_tail),
      PFDQC1_CHECK(relative_error_algebra),
      PFDQC1_CHECK(spec_round_trip),
  };
  return checks;
}

#undef PFDQC1_CHECK

inline std::vector<PropertyResult> run_property_suite(const ValidateOptions& o = {}) {
  std::vector<PropertyResult> out;
  for (const PropertyCheck& c : property_checks()) out.push_back(c.run(o));
  return out;
}

}  // namespace pfdqc1
