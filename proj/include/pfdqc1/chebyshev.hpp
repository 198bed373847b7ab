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

// Chebyshev expansion of exp(-beta H) with modified Bessel coefficients:
//   exp(-beta H) = sum_k (-1)^k I_k(beta) T_k(H),   ||H|| <= 1.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pfdqc1/densemath.hpp"
#include "pfdqc1/errors.hpp"

namespace pfdqc1 {

inline constexpr double kMaxBesselArgument = 700.0;

/// Modified Bessel function of the first kind I_k(beta), k >= 0, from the
/// ascending series (beta/2)^k sum_r (beta^2/4)^r / (r! (r+k)!).
inline double bessel_i(int k, double beta) {
  if (k < 0) throw InputError("bessel_i: order must be >= 0");
  if (!(beta >= 0.0)) throw InputError("bessel_i: argument must be >= 0");
  if (beta > kMaxBesselArgument) {
    throw InputError("bessel_i: argument " + std::to_string(beta) + " > 700 overflows");
  }
  if (beta == 0.0) return k == 0 ? 1.0 : 0.0;
  const double x = 0.25 * beta * beta;
  // leading term in log space so (beta/2)^k / k! cannot overflow on its own
  double term = std::exp(k * std::log(0.5 * beta) - std::lgamma(k + 1.0));
  if (term == 0.0) return 0.0;
  double sum = term;
  for (int r = 0; r < 100000; ++r) {
    term *= x / ((r + 1.0) * (r + 1.0 + k));
    sum += term;
    if (term < 1e-17 * sum) return sum;
  }
  throw NumericalError("bessel_i: series did not converge");
}

/// Truncation plan for S_K = I_0(beta) + 2 sum_{k=1}^K (-1)^k I_k(beta) T_k(H).
struct ChebyshevPlan {
  int K = 0;
  int qubits = 0;
  double beta = 0.0;
  double eps_abs = 0.0;
  std::vector<double> coeffs;  // coeffs[k] = (-1)^k I_k(beta), k = 0..K
};

inline int chebyshev_order(int m, double beta, double eps_abs) {
  const double raw = m + std::numbers::e * beta + std::log2(1.0 / eps_abs) + 2.0;
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

inline ChebyshevPlan plan_chebyshev(int m, double beta, double eps_abs) {
  if (!(eps_abs > 0.0)) throw InputError("plan_chebyshev: eps_abs must be > 0");
  if (!(beta >= 0.0)) throw InputError("plan_chebyshev: beta must be >= 0");
  ChebyshevPlan plan;
  plan.K = chebyshev_order(m, beta, eps_abs);
  plan.qubits = m;
  plan.beta = beta;
  plan.eps_abs = eps_abs;
  plan.coeffs.resize(static_cast<std::size_t>(plan.K) + 1);
  for (int k = 0; k <= plan.K; ++k) {
    const double ik = bessel_i(k, beta);
    plan.coeffs[static_cast<std::size_t>(k)] = (k % 2 == 0) ? ik : -ik;
  }
  return plan;
}

inline void require_unit_norm(const DenseOperator& h, const char* who) {
  if (!h.is_hermitian()) throw InputError(std::string(who) + ": H is not Hermitian");
  const double n = spectral_norm(h);
  if (n > 1.0 + tolerances().norm_slack) {
    throw InputError(std::string(who) + ": ||H|| = " + std::to_string(n) + " exceeds 1");
  }
}

/// T_k(H) by the three-term recurrence T_{k+1} = 2 H T_k - T_{k-1}.
inline DenseOperator chebyshev_op(const DenseOperator& h, int k) {
  if (k < 0) throw InputError("chebyshev_op: k must be >= 0");
  require_unit_norm(h, "chebyshev_op");
  DenseOperator prev = DenseOperator::identity(h.qubits());
  if (k == 0) return prev;
  DenseOperator cur = h;
  for (int j = 1; j < k; ++j) {
    DenseOperator next = Complex(2.0) * (h * cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline DenseOperator build_s_k(const DenseOperator& h, const ChebyshevPlan& plan) {
  require_unit_norm(h, "build_s_k");
  const int n = h.qubits();
  DenseOperator sum = Complex(plan.coeffs[0]) * DenseOperator::identity(n);
  if (plan.K == 0) return sum;
  DenseOperator prev = DenseOperator::identity(n);
  DenseOperator cur = h;
  sum += Complex(2.0 * plan.coeffs[1]) * cur;
  for (int k = 2; k <= plan.K; ++k) {
    DenseOperator next = Complex(2.0) * (h * cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
    sum += Complex(2.0 * plan.coeffs[static_cast<std::size_t>(k)]) * cur;
  }
  return sum;
}

/// Analytic bound ||S_K - exp(-beta H)||_1 <= M e^beta 2^{1-K}.
inline double tail_bound(const ChebyshevPlan& plan, int m) {
  if (plan.K < 1 || plan.K < std::numbers::e * plan.beta) {
    throw InputError("tail_bound: requires K >= max(e*beta, 1)");
  }
  return static_cast<double>(dim_of(m)) * std::exp(plan.beta) * std::exp2(1.0 - plan.K);
}

}  // namespace pfdqc1
