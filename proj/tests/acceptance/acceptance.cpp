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

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "pfdqc1/pfdqc1.hpp"
#include "pfdqc1/random.hpp"
#include "pfdqc1/validate.hpp"

using namespace pfdqc1;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

HamiltonianSpec prepared_unitary(int m, std::size_t L, Rng& rng) {
  return pad_to_power_of_two(normalize(random_unitary_sum(m, L, rng), 1.0).first);
}

HamiltonianSpec prepared_projector(int m, std::size_t L, Rng& rng) {
  return pad_to_power_of_two(normalize(random_projector_sum(m, L, rng), 1.0).first);
}

// 1. Chebyshev truncation bound on the whole (beta, eps) grid.
Outcome chebyshev_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int m = 1 + i % 4;
    const DenseOperator h = random_hermitian(m, rng);
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      const Matrix exact = oracle::expm_neg(h.matrix(), beta);
      for (double eps : {1e-2, 1e-4}) {
        const ChebyshevPlan plan = plan_chebyshev(m, beta, eps);
        const double err = oracle::trace_norm(build_s_k(h, plan).matrix() - exact);
        worst_ratio = std::max(worst_ratio, err / (eps / 2.0));
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst_ratio <= 1.0 && secs < 10.0,
          fmt("max ||S_K - e^{-bH}||_1 / (eps/2) = %.3g, runtime %.2f s (limit 10 s)", worst_ratio,
              secs)};
}

// 2. Quadrature bound for PSD H.
Outcome hst_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(102);
  double worst_ratio = 0.0;
  int max_j = 0;
  for (int i = 0; i < 20; ++i) {
    const int m = 1 + i % 4;
    const DenseOperator h = random_psd(m, rng);
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      const Matrix exact = oracle::expm_neg(h.matrix(), beta);
      for (double eps : {1e-2, 1e-4}) {
        const HstPlan plan = plan_hst(m, beta, eps);
        max_j = std::max(max_j, plan.J);
        const double err = oracle::trace_norm(build_x_j(h, plan).matrix() - exact);
        worst_ratio = std::max(worst_ratio, err / (eps / 4.0));
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst_ratio <= 1.0 && secs < 60.0,
          fmt("max ||X_J - e^{-bH}||_1 / (eps/4) = %.3g, J up to %.0f, runtime %.2f s", worst_ratio,
              max_j, secs)};
}

// 3. Walk powers carry Chebyshev polynomials in their top-left block.
Outcome walk_identity() {
  Rng rng(103);
  double worst = 0.0;
  int specs = 0;
  for (int m = 1; m <= 3; ++m) {
    for (std::size_t L = 1; L <= 4; ++L) {
      const HamiltonianSpec s = prepared_unitary(m, L, rng);
      const BlockEncoding be = build_block_encoding(s);
      const Matrix h = to_dense(s).matrix();
      const auto blocks = walk_blocks(be, 20);
      for (int k = 0; k <= 20; ++k) {
        const Matrix diff = blocks[static_cast<std::size_t>(k)].matrix() - oracle::chebyshev_t(h, k);
        worst = std::max(worst, Eigen::JacobiSVD<Matrix>(diff).singularValues()(0));
      }
      ++specs;
    }
  }
  return {worst <= 1e-8, fmt("max_k<=20 ||block - T_k(H)|| = %.3g over %.0f specs (tol 1e-8)", worst,
                             specs)};
}

// 4. Gap amplification and its unitary decomposition.
Outcome gap_amplification() {
  Rng rng(104);
  double worst = 0.0;
  double recon = 0.0;
  double unit = 0.0;
  std::size_t most = 0;
  for (int i = 0; i < 10; ++i) {
    const int m = 1 + i % 3;
    const HamiltonianSpec s = prepared_projector(m, 1 + static_cast<std::size_t>(i % 3), rng);
    const GapAmplified ga = build_gap_amplified(s);
    const Matrix h = to_dense(s).matrix();
    const Matrix hp2 = ga.H_prime.matrix() * ga.H_prime.matrix();
    const Eigen::Index dsel = Eigen::Index{1} << ga.m1;
    for (int k = 0; k < 50; ++k) {
      const Vector phi = random_state(s.dim(), rng);
      const Vector hphi = h * phi;
      Vector in = Vector::Zero(phi.size() * dsel);
      Vector want = Vector::Zero(phi.size() * dsel);
      for (Eigen::Index x = 0; x < phi.size(); ++x) {
        in(x * dsel) = phi(x);
        want(x * dsel) = hphi(x);
      }
      worst = std::max(worst, (hp2 * in - want).norm());
    }
    Matrix sum = Matrix::Zero(ga.H_prime.dim(), ga.H_prime.dim());
    for (const auto& t : ga.unitary_terms) {
      sum += t.coeff * t.unitary.matrix();
      const Matrix& u = t.unitary.matrix();
      unit = std::max(unit, (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
    }
    recon = std::max(recon, (sum - ga.H_prime.matrix()).cwiseAbs().maxCoeff());
    most = std::max(most, ga.unitary_terms.size());
  }
  const bool ok = worst <= 1e-9 && recon <= 1e-9 && unit <= 1e-9 && most <= 8;
  return {ok, fmt("identity residual %.3g, decomposition residual %.3g, unitarity %.3g", worst, recon,
                  unit) +
                  ", " + std::to_string(most) + " unitaries (tol 1e-9)"};
}

// 5. Trace of the extended circuit equals the ancilla-block trace.
Outcome extended_circuit_identity() {
  Rng rng(105);
  double worst = 0.0;
  for (int total = 2; total <= 5; ++total) {
    for (int anc = 1; anc < total; ++anc) {
      for (int rep = 0; rep < 3; ++rep) {
        const DenseOperator w = random_unitary(total, rng);
        const Matrix v = oracle::extended_circuit(w.matrix(), total - anc, anc);
        const Complex lhs = v.trace() / static_cast<double>(dim_of(anc));
        worst = std::max(worst, std::abs(lhs - block_trace(w, anc)));
        worst = std::max(worst, (extended_circuit(w, anc).matrix() - v).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst <= 1e-10, fmt("max |Tr V / 2^anc - Tr <0|W|0>| = %.3g, m + anc <= 5 (tol 1e-10)", worst)};
}

// 6. Block traces of exact evolutions reproduce Tr X_J.
Outcome trace_transfer() {
  Rng rng(106);
  double worst = 0.0;
  for (int i = 0; i < 9; ++i) {
    const HamiltonianSpec s = prepared_projector(1 + i % 3, 1 + static_cast<std::size_t>(i / 3), rng);
    const GapAmplified ga = build_gap_amplified(s);
    for (double beta : {0.5, 2.0}) {
      const HstPlan plan = plan_hst(s.qubits(), beta, 1e-3);
      std::vector<double> traces(static_cast<std::size_t>(plan.J) + 1);
      for (int j = 0; j <= plan.J; ++j) {
        const Matrix u = (Complex(0.0, -plan.times[static_cast<std::size_t>(j)]) * ga.H_prime.matrix()).exp();
        traces[static_cast<std::size_t>(j)] = oracle::block_trace(u, ga.m1).real();
      }
      const double lhs = hst_trace_combination(traces, plan, static_cast<double>(s.dim()));
      const double rhs = build_x_j(to_dense(s), plan).trace().real();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {worst <= 1e-9, fmt("max |Tr <0|X~_J|0> - Tr X_J| = %.3g (tol 1e-9)", worst)};
}

// 7. Additive estimators in analytic mode against the exact partition function.
Outcome additive_end_to_end() {
  Rng rng(107);
  double worst_ratio = 0.0;
  int runs = 0;
  for (int m = 1; m <= 3; ++m) {
    for (double beta : {0.5, 1.0, 2.0}) {
      for (double eps : {1e-2, 1e-3}) {
        AdditiveConfig c;
        c.eps_abs = eps;
        const HamiltonianSpec u = prepared_unitary(m, 1 + static_cast<std::size_t>(m), rng);
        const EstimationReport rc = estimate_pf_chebyshev(u, beta, c);
        worst_ratio = std::max(worst_ratio,
                               std::abs(rc.z_hat - oracle::partition(to_dense(u).matrix(), beta)) / (eps / 2.0));
        const HamiltonianSpec p = prepared_projector(m, static_cast<std::size_t>(m), rng);
        const EstimationReport rh = estimate_pf_hst(p, beta, c);
        worst_ratio = std::max(worst_ratio,
                               std::abs(rh.z_hat - oracle::partition(to_dense(p).matrix(), beta)) / (eps / 2.0));
        runs += 2;
      }
    }
  }
  return {worst_ratio <= 1.0,
          fmt("max |Z_hat - Z| / (eps/2) = %.3g over %.0f runs, both methods", worst_ratio, runs)};
}

// 8. Hoeffding coverage of the sampled trace estimator.
Outcome hoeffding_coverage() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(108);
  const DenseOperator w = random_unitary(2, rng);  // one system qubit, one ancilla
  const double exact = block_trace(w, 1).real();
  const double eps = 0.25;
  const double delta0 = 0.1;
  const ShotPlan plan = plan_shots(2, eps, delta0);
  const int trials = 500;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    const TraceEstimate e = sample_trace(w, 1, plan, 2024, static_cast<std::uint64_t>(t));
    failures += std::abs(e.value - exact) > eps;
  }
  const double freq = static_cast<double>(failures) / trials;
  const double limit = delta0 + 3.0 * std::sqrt(delta0 / trials);
  const double secs = seconds_since(t0);
  return {freq <= limit && plan.Q <= 100000 && secs < 60.0,
          fmt("failure frequency %.4f <= %.4f, Q = %.0f", freq, limit, static_cast<double>(plan.Q)) +
              fmt(", runtime %.2f s", secs)};
}

// 9. Relative wrapper with a calibrated mock estimator.
Outcome relative_wrapper_mock() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(109);
  const double x_max = 1.0;
  const double eps_rel = 0.1;
  const double delta = 0.1;
  const int trials = 500;
  bool ok = true;
  std::string detail;
  for (double x : {0.6, x_max / std::exp2(3.3), 0.004}) {
    int fail = 0;
    int tail = 0;
    double sum_r = 0.0;
    const int q = props::stopping_reference(x_max, x);
    for (int t = 0; t < trials; ++t) {
      const RelativeResult res = estimate_relative(props::CalibratedMock{x, &rng}, eps_rel, delta, x_max);
      fail += std::abs(res.x_hat - x) > eps_rel * x;
      tail += res.R >= q + 2;
      sum_r += res.R;
    }
    const double fail_limit = delta + 3.0 * std::sqrt(delta * (1.0 - delta) / trials);
    const double mean_r = sum_r / trials;
    const double r_limit = std::log2(x_max / x) + 3.0;
    const double b = props::stopping_tail_bound(2);
    const double tail_limit = b + 3.0 * std::sqrt(b * (1.0 - b) / trials);
    const double ffail = static_cast<double>(fail) / trials;
    const double ftail = static_cast<double>(tail) / trials;
    ok = ok && ffail <= fail_limit && mean_r <= r_limit && ftail <= tail_limit;
    detail += fmt("[X=%.3g: fail %.3f", x, ffail) + fmt(" <= %.3f, mean R %.2f", fail_limit, mean_r) +
              fmt(" <= %.2f, Pr(R>=q+2) %.3f", r_limit, ftail) + fmt(" <= %.3f] ", tail_limit);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 30.0, detail + fmt("runtime %.2f s", secs)};
}

// 10. Relative-error solver over both estimators.
Outcome relative_end_to_end() {
  Rng rng(110);
  double worst_ratio = 0.0;
  int worst_slack = -100;
  for (int m = 1; m <= 3; ++m) {
    for (double eps_rel : {0.1, 0.05}) {
      for (Method method : {Method::Chebyshev, Method::Hst}) {
        const HamiltonianSpec s = method == Method::Chebyshev
                                      ? random_unitary_sum(m, static_cast<std::size_t>(m) + 1, rng)
                                      : random_projector_sum(m, static_cast<std::size_t>(m), rng);
        const double beta = 1.0;
        const double z = oracle::partition(to_dense(s).matrix(), beta);
        RelativeConfig c;
        c.eps_rel = eps_rel;
        const EstimationReport r = solve_pfp(s, beta, method, c);
        worst_ratio = std::max(worst_ratio, std::abs(r.z_hat_original - z) / (eps_rel * z));
        const double z_working = z * std::exp(-r.log_offset);
        const int bound = static_cast<int>(std::ceil(std::log2(r.z_max / z_working))) + 3;
        worst_slack = std::max(worst_slack, r.relative->R - bound);
      }
    }
  }
  return {worst_ratio <= 1.0 && worst_slack <= 0,
          fmt("max |Z_hat - Z| / (eps_rel Z) = %.3g, max R - (ceil(log2(Zmax/Z)) + 3) = %.0f", worst_ratio,
              worst_slack)};
}

// 11. Local-term reduction feeding the quadrature estimator.
Outcome local_reduction() {
  Rng rng(111);
  const int m = 4;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const std::vector<LocalTerm> locals = random_local_terms(m, 2, 3 + static_cast<std::size_t>(i), rng);
    const LocalDecomposition d = decompose_local_terms(locals, m);
    const double beta_user = 0.5;
    Matrix h = Matrix::Zero(16, 16);
    for (const auto& lt : locals) h += embed_local(lt.matrix, lt.support, m).matrix();
    const double exact = oracle::partition(h, beta_user) / (16.0 * std::exp(-beta_user * d.lambda));

    const PreparedSpec p = prepare_spec(d.spec, Method::Hst);
    const double beta_working = beta_user * d.spec.beta_scale() * p.beta_factor;
    AdditiveConfig c;
    c.eps_abs = 0.05 * 16.0;
    const EstimationReport r = estimate_pf_hst(p.spec, beta_working, c);
    const double recovered = r.z_hat_original / (16.0 * std::exp(-beta_user * d.lambda));
    worst = std::max(worst, std::abs(recovered - exact));
  }
  return {worst <= 0.05, fmt("max |Z~/(2^m e^{-b lambda}) - exact| = %.3g (tol 0.05)", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"chebyshev truncation bound", chebyshev_bound},
      {"quadrature truncation bound", hst_bound},
      {"walk operator Chebyshev identity", walk_identity},
      {"gap amplification", gap_amplification},
      {"extended circuit trace identity", extended_circuit_identity},
      {"quadrature trace transfer", trace_transfer},
      {"additive estimation end to end", additive_end_to_end},
      {"Hoeffding coverage", hoeffding_coverage},
      {"relative wrapper with mock estimator", relative_wrapper_mock},
      {"relative estimation end to end", relative_end_to_end},
      {"local-term reduction", local_reduction},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
