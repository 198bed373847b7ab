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

// Discretised Hubbard-Stratonovich representation of exp(-beta H), H >= 0:
//   X_J = (dy / sqrt(2 pi)) sum_{j=-J}^{J} exp(-y_j^2 / 2) exp(-i y_j sqrt(2 beta H)).

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pfdqc1/densemath.hpp"
#include "pfdqc1/errors.hpp"

namespace pfdqc1 {

struct HstPlan {
  int J = 0;
  int qubits = 0;
  double delta_y = 0.0;
  double beta = 0.0;
  double eps_abs = 0.0;
  std::vector<double> weights;  // w_j = dy/sqrt(2 pi) exp(-y_j^2/2), j = 0..J
  std::vector<double> times;    // t_j = y_j sqrt(2 beta)

  double y(int j) const { return j * delta_y; }
};

inline HstPlan plan_hst(int m, double beta, double eps_abs) {
  if (!(eps_abs > 0.0) || eps_abs > 1.0) throw InputError("plan_hst: eps_abs must be in (0, 1]");
  if (!(beta >= 0.0)) throw InputError("plan_hst: beta must be >= 0");
  const double s = m + std::log2(1.0 / eps_abs);
  const double root_s = std::sqrt(s);
  const double root_b = std::sqrt(beta);
  HstPlan plan;
  plan.qubits = m;
  plan.beta = beta;
  plan.eps_abs = eps_abs;
  plan.J = static_cast<int>(std::ceil(12.0 * (root_b + root_s) * root_s));
  plan.delta_y = 1.0 / (2.0 * (root_b + root_s));
  const double norm = plan.delta_y / std::sqrt(2.0 * std::numbers::pi);
  plan.weights.resize(static_cast<std::size_t>(plan.J) + 1);
  plan.times.resize(static_cast<std::size_t>(plan.J) + 1);
  for (int j = 0; j <= plan.J; ++j) {
    const double yj = plan.y(j);
    plan.weights[static_cast<std::size_t>(j)] = norm * std::exp(-0.5 * yj * yj);
    plan.times[static_cast<std::size_t>(j)] = yj * std::sqrt(2.0 * beta);
  }
  return plan;
}

/// w_0 + 2 sum_j w_j cos(t_j sqrt(lambda)); approximates exp(-beta lambda) on [0, 1].
inline double scalar_quadrature(const HstPlan& plan, double lambda) {
  if (lambda < 0.0) throw InputError("scalar_quadrature: lambda must be >= 0");
  const double r = std::sqrt(lambda);
  double s = 0.0;
  for (int j = plan.J; j >= 1; --j) {
    s += plan.weights[static_cast<std::size_t>(j)] * std::cos(plan.times[static_cast<std::size_t>(j)] * r);
  }
  return plan.weights[0] + 2.0 * s;
}

inline DenseOperator build_x_j(const DenseOperator& h, const HstPlan& plan) {
  const EigenSystem es = eigh(h);
  const double tol = tolerances().psd_clamp;
  if (es.values(0) < -tol) {
    throw InputError("build_x_j: H has negative eigenvalue " + std::to_string(es.values(0)));
  }
  if (es.values(es.values.size() - 1) > 1.0 + tolerances().norm_slack) {
    throw InputError("build_x_j: ||H|| exceeds 1");
  }
  return spectral_apply(es, [&](double x) { return scalar_quadrature(plan, std::max(x, 0.0)); });
}

/// (dy/sqrt(2 pi)) (M + 2 sum_{j>=1} exp(-y_j^2/2) block_traces[j]); the j = 0
/// term is the identity evolution and contributes M exactly.
inline double hst_trace_combination(std::span<const double> block_traces, const HstPlan& plan,
                                    double M) {
  if (block_traces.size() != static_cast<std::size_t>(plan.J) + 1) {
    throw InputError("hst_trace_combination: expected " + std::to_string(plan.J + 1) +
                     " block traces, got " + std::to_string(block_traces.size()));
  }
  double s = 0.0;
  for (int j = 1; j <= plan.J; ++j) {
    s += plan.weights[static_cast<std::size_t>(j)] * block_traces[static_cast<std::size_t>(j)];
  }
  return plan.weights[0] * M + 2.0 * s;
}

}  // namespace pfdqc1
