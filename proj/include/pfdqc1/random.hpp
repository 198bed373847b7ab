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

// Seeded random instances for property checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "pfdqc1/densemath.hpp"
#include "pfdqc1/hamiltonian.hpp"

namespace pfdqc1 {

using Rng = std::mt19937_64;

inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix a(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) a(r, c) = Complex(n(rng), n(rng));
  return a;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
inline DenseOperator random_unitary(int qubits, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim_of(qubits));
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return DenseOperator(qubits, std::move(q));
}

inline Vector random_state(std::size_t dim, Rng& rng) {
  Vector v = ginibre(static_cast<Eigen::Index>(dim), 1, rng).col(0);
  return v / v.norm();
}

/// Hermitian with spectral norm drawn uniformly from [0.5, 1].
inline DenseOperator random_hermitian(int qubits, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim_of(qubits));
  const Matrix a = ginibre(d, d, rng);
  DenseOperator h(qubits, Matrix(0.5 * (a + a.adjoint())));
  const double scale = std::uniform_real_distribution<double>(0.5, 1.0)(rng) / spectral_norm(h);
  return h * Complex(scale);
}

/// Positive semidefinite with largest eigenvalue in [0.5, 1].
inline DenseOperator random_psd(int qubits, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim_of(qubits));
  const Matrix a = ginibre(d, d, rng);
  Matrix p = a * a.adjoint();
  p = 0.5 * (p + p.adjoint()).eval();
  DenseOperator h(qubits, std::move(p));
  const double scale = std::uniform_real_distribution<double>(0.5, 1.0)(rng) / spectral_norm(h);
  return h * Complex(scale);
}

/// Orthogonal projector of rank in [1, 2^qubits - 1] onto a random subspace.
inline DenseOperator random_projector(int qubits, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim_of(qubits));
  const auto rank = std::uniform_int_distribution<Eigen::Index>(1, std::max<Eigen::Index>(d - 1, 1))(rng);
  const DenseOperator u = random_unitary(qubits, rng);
  const Matrix cols = u.matrix().leftCols(rank);
  Matrix p = cols * cols.adjoint();
  p = 0.5 * (p + p.adjoint()).eval();
  return DenseOperator(qubits, std::move(p));
}

inline PauliString random_pauli(int qubits, Rng& rng) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (int i = 0; i < qubits; ++i) s.push_back(kLetters[pick(rng)]);
  return PauliString(std::move(s));
}

inline HamiltonianSpec random_unitary_sum(int qubits, std::size_t terms, Rng& rng) {
  std::uniform_real_distribution<double> c(0.1, 1.0);
  std::vector<Term> t;
  for (std::size_t l = 0; l < terms; ++l) t.push_back(Term{c(rng), random_pauli(qubits, rng)});
  return HamiltonianSpec(HamiltonianKind::UnitarySum, qubits, std::move(t));
}

inline HamiltonianSpec random_projector_sum(int qubits, std::size_t terms, Rng& rng) {
  std::uniform_real_distribution<double> c(0.1, 1.0);
  std::vector<Term> t;
  for (std::size_t l = 0; l < terms; ++l) {
    t.push_back(Term{c(rng), ProjectorTerm(random_projector(qubits, rng))});
  }
  return HamiltonianSpec(HamiltonianKind::ProjectorSum, qubits, std::move(t));
}

/// Random Hermitian terms on `locality` distinct qubits each.
inline std::vector<LocalTerm> random_local_terms(int qubits, int locality, std::size_t terms,
                                                 Rng& rng) {
  std::vector<LocalTerm> out;
  std::vector<int> all(static_cast<std::size_t>(qubits));
  for (int i = 0; i < qubits; ++i) all[static_cast<std::size_t>(i)] = i;
  for (std::size_t l = 0; l < terms; ++l) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> support(all.begin(), all.begin() + locality);
    std::sort(support.begin(), support.end());
    out.push_back(LocalTerm{support, random_hermitian(locality, rng)});
  }
  return out;
}

/// Inverse of the standard normal CDF, by bisection on erfc.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("normal_quantile: p must be in (0, 1)");
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pfdqc1
