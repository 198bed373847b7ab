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

// One-clean-qubit trace estimation.
//
// The clean qubit sees <sigma_x> = Re Tr[V] / 2^n for a unitary V on n
// maximally mixed qubits. A block trace Tr[<0_a|W|0_a>] of W on m + a qubits
// is read out through the extended circuit V on n = m + 2a qubits with
// Tr[V] / 2^a = Tr[<0_a|W|0_a>], so <sigma_x> = Re Tr[<0_a|W|0_a>] / 2^{m+a}
// and the estimate is chi = 2^{m+a} s_x.

#include <cmath>
#include <cstdint>
#include <string>

#include "pfdqc1/densemath.hpp"
#include "pfdqc1/errors.hpp"

namespace pfdqc1 {

inline constexpr double kDefaultShotCap = 1e9;

enum class EstimationMode { Analytic, Sampled };

inline const char* to_string(EstimationMode m) {
  return m == EstimationMode::Analytic ? "analytic" : "sampled";
}

/// Hoeffding plan: Q = ceil(2^{2n+1} / eps^2 * ln(2 / delta0)).
struct ShotPlan {
  std::uint64_t Q = 0;
  double epsilon = 0.0;
  double delta0 = 0.0;
  int n = 0;
};

inline double required_shots(int n, double epsilon, double delta0) {
  return std::ceil(std::exp2(2.0 * n + 1.0) / (epsilon * epsilon) * std::log(2.0 / delta0));
}

inline ShotPlan plan_shots(int n, double epsilon, double delta0, double cap = kDefaultShotCap) {
  if (!(epsilon > 0.0)) throw InputError("plan_shots: epsilon must be > 0");
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw InputError("plan_shots: delta0 must be in (0, 1)");
  if (n < 0) throw InputError("plan_shots: n must be >= 0");
  const double q = required_shots(n, epsilon, delta0);
  if (q > cap) throw ShotCapExceeded(q, cap);
  return ShotPlan{static_cast<std::uint64_t>(q), epsilon, delta0, n};
}

// ---------------------------------------------------------------------------
// Counter-based randomness: every outcome is a pure function of
// (seed, stream, shot), so results do not depend on evaluation order.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline double keyed_uniform(std::uint64_t key, std::uint64_t shot) {
  return static_cast<double>(splitmix64(key + shot * 0x9e3779b97f4a7c15ULL) >> 11) * 0x1.0p-53;
}

/// Stream id for term `index` of round `round` (round 0 for single estimates).
inline std::uint64_t term_stream(std::uint64_t index, std::uint64_t round = 0) {
  return (round << 32) ^ index;
}

/// Mean of Q simulated +-1 outcomes with P(+1) = (1 + expectation) / 2.
inline double sample_sigma_x(double expectation, std::uint64_t Q, std::uint64_t seed,
                             std::uint64_t stream) {
  const double p = 0.5 * (1.0 + expectation);
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw NumericalError("sample_sigma_x: outcome probability " + std::to_string(p) +
                         " outside [0, 1]");
  }
  if (Q == 0) throw InputError("sample_sigma_x: Q must be >= 1");
  const std::uint64_t key = stream_key(seed, stream);
  std::uint64_t plus = 0;
  for (std::uint64_t s = 0; s < Q; ++s) plus += keyed_uniform(key, s) < p ? 1U : 0U;
  return (2.0 * static_cast<double>(plus) - static_cast<double>(Q)) / static_cast<double>(Q);
}

struct TraceEstimate {
  double value = 0.0;
  std::uint64_t shots_used = 0;
  EstimationMode mode = EstimationMode::Analytic;
  double sigma_x_mean = 0.0;
};

/// Exact <sigma_x> of the trace-estimation circuit for block trace readout.
inline double sigma_x_expectation(const DenseOperator& w, int m_anc) {
  if (!w.is_unitary(1e-8)) throw InputError("sigma_x_expectation: W is not unitary");
  return block_trace(w, m_anc).real() / static_cast<double>(dim_of(w.qubits()));
}

/// Monte Carlo estimate chi = 2^{m + m_anc} s_x from the plan's Q shots.
inline TraceEstimate sample_trace(const DenseOperator& w, int m_anc, const ShotPlan& plan,
                                  std::uint64_t seed, std::uint64_t stream = 0) {
  const double ex = sigma_x_expectation(w, m_anc);
  const double sx = sample_sigma_x(ex, plan.Q, seed, stream);
  return {static_cast<double>(dim_of(w.qubits())) * sx, plan.Q, EstimationMode::Sampled, sx};
}

/// Estimate of a known real block trace `re_trace` on m + m_anc qubits, as the
/// one-clean-qubit protocol would return it. Sampled mode plans Q with the
/// Hoeffding exponent m + m_anc.
inline TraceEstimate estimate_trace_value(double re_trace, int m, int m_anc, double epsilon,
                                          double delta0, EstimationMode mode, std::uint64_t seed,
                                          std::uint64_t stream = 0,
                                          double cap = kDefaultShotCap) {
  const double scale = static_cast<double>(dim_of(m + m_anc));
  const double ex = re_trace / scale;
  if (mode == EstimationMode::Analytic) return {re_trace, 0, mode, ex};
  const ShotPlan plan = plan_shots(m + m_anc, epsilon, delta0, cap);
  const double sx = sample_sigma_x(ex, plan.Q, seed, stream);
  return {scale * sx, plan.Q, mode, sx};
}

inline TraceEstimate estimate_block_trace(const DenseOperator& w, int m_anc, double epsilon,
                                          double delta0, EstimationMode mode, std::uint64_t seed,
                                          std::uint64_t stream = 0,
                                          double cap = kDefaultShotCap) {
  if (!w.is_unitary(1e-8)) throw InputError("estimate_block_trace: W is not unitary");
  if (m_anc < 0 || m_anc > w.qubits()) throw InputError("estimate_block_trace: bad ancilla count");
  return estimate_trace_value(block_trace(w, m_anc).real(), w.qubits() - m_anc, m_anc, epsilon,
                              delta0, mode, seed, stream, cap);
}

/// Extended circuit V on m + 2 m_anc qubits: CNOTs from each ancilla a_i to a
/// fresh qubit b_i (b register trailing), then W on (system, a).
inline DenseOperator extended_circuit(const DenseOperator& w, int m_anc) {
  if (m_anc < 0 || m_anc > w.qubits()) throw InputError("extended_circuit: bad ancilla count");
  const int n = w.qubits() + m_anc;
  require_dense_cap(n);
  const auto db = static_cast<Eigen::Index>(dim_of(m_anc));
  const Eigen::Index amask = db - 1;
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  // V |x, a, b> = (W |x, a>) |b ^ a>
  Matrix v = Matrix::Zero(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    const Eigen::Index xa = col / db;
    const Eigen::Index b = col % db;
    const Eigen::Index a = xa & amask;
    const Eigen::Index b_out = b ^ a;
    for (Eigen::Index row_xa = 0; row_xa < w.dim(); ++row_xa) {
      v(row_xa * db + b_out, col) = w(row_xa, xa);
    }
  }
  return DenseOperator(n, std::move(v));
}

/// Full density-matrix simulation of the trace-estimation circuit: clean qubit
/// (leading factor) through a Hadamard, controlled-V on the maximally mixed
/// register, then Tr[rho_f sigma_x].
inline double simulate_trace_circuit(const DenseOperator& v) {
  const int n = v.qubits();
  require_dense_cap(n + 1);
  const Eigen::Index d = v.dim();
  Matrix rho = Matrix::Zero(2 * d, 2 * d);
  rho.topLeftCorner(d, d) = Matrix::Identity(d, d) / static_cast<double>(d);
  Matrix had = Matrix::Zero(2 * d, 2 * d);
  const double s = 1.0 / std::sqrt(2.0);
  had.topLeftCorner(d, d) = s * Matrix::Identity(d, d);
  had.topRightCorner(d, d) = s * Matrix::Identity(d, d);
  had.bottomLeftCorner(d, d) = s * Matrix::Identity(d, d);
  had.bottomRightCorner(d, d) = -s * Matrix::Identity(d, d);
  Matrix cv = Matrix::Zero(2 * d, 2 * d);
  cv.topLeftCorner(d, d) = Matrix::Identity(d, d);
  cv.bottomRightCorner(d, d) = v.matrix();
  const Matrix step = cv * had;
  const Matrix rho_f = step * rho * step.adjoint();
  Matrix sx = Matrix::Zero(2 * d, 2 * d);
  sx.topRightCorner(d, d) = Matrix::Identity(d, d);
  sx.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
  return (rho_f * sx).trace().real();
}

}  // namespace pfdqc1
