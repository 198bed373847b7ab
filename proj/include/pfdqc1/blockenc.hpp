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

// Qubitization walk operators for sums of unitaries and the gap-amplified
// Hamiltonian H' for sums of projectors.
//
// Register layout: system (m) | selection (m'_1) | ancilla a (unitary case only).

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pfdqc1/densemath.hpp"
#include "pfdqc1/errors.hpp"
#include "pfdqc1/hamiltonian.hpp"

namespace pfdqc1 {

/// Unitary on `qubits` qubits whose first column is `column` (a unit vector),
/// completed as a Householder reflection.
inline DenseOperator complete_unitary(const Vector& column, int qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(qubits));
  if (column.size() != d) throw InputError("complete_unitary: column has wrong dimension");
  if (std::abs(column.norm() - 1.0) > 1e-12) {
    throw InputError("complete_unitary: column is not normalized");
  }
  const Complex phase = std::abs(column(0)) > 0.0 ? column(0) / std::abs(column(0)) : Complex(1.0);
  const Vector u = std::conj(phase) * column;  // u(0) real and >= 0
  Vector w = -u;
  w(0) += 1.0;
  Matrix g = Matrix::Identity(d, d);
  const double wn = w.squaredNorm();
  if (wn > 1e-30) g -= (2.0 / wn) * (w * w.adjoint());
  return DenseOperator(qubits, phase * g);
}

struct BlockEncoding {
  int m = 0;
  int m1 = 0;       // selection register
  int m_prime = 0;  // m1 + 1 with the ancilla a
  DenseOperator G_tilde;
  DenseOperator W_H;
  DenseOperator U_prime;
};

namespace detail {

struct WeightedUnitary {
  double weight;
  DenseOperator unitary;
};

inline std::vector<WeightedUnitary> lcu_terms(const HamiltonianSpec& spec) {
  std::vector<WeightedUnitary> out;
  if (spec.l1_norm() == 0.0) {
    // H = 0 as (1/2) I + (1/2) (-I)
    const auto id = DenseOperator::identity(spec.qubits());
    out.push_back({0.5, id});
    out.push_back({0.5, Complex(-1.0) * id});
    return out;
  }
  for (const auto& t : spec.terms()) out.push_back({t.coeff, t.to_dense()});
  return out;
}

}  // namespace detail

inline BlockEncoding build_block_encoding(const HamiltonianSpec& spec) {
  if (spec.kind() != HamiltonianKind::UnitarySum) {
    throw InputError("build_block_encoding: spec must be a unitary_sum");
  }
  if (spec.l1_norm() != 0.0 && !spec.is_normalized()) {
    throw InputError("build_block_encoding: spec not normalized");
  }
  const auto terms = detail::lcu_terms(spec);
  const std::size_t L = terms.size();
  const int m1 = ceil_log2(L);
  if ((std::size_t{1} << m1) != L) {
    throw InputError("build_block_encoding: L = " + std::to_string(L) + " is not a power of two");
  }
  const int m = spec.qubits();
  require_dense_cap(m + m1 + 1);

  Vector col(static_cast<Eigen::Index>(L));
  for (std::size_t l = 0; l < L; ++l) col(static_cast<Eigen::Index>(l)) = std::sqrt(terms[l].weight);
  const DenseOperator G = complete_unitary(col, m1);

  const auto ds = static_cast<Eigen::Index>(dim_of(m));
  const auto dsel = static_cast<Eigen::Index>(L);
  const Eigen::Index n1 = ds * dsel;
  Matrix U = Matrix::Zero(n1, n1);
  for (std::size_t l = 0; l < L; ++l) {
    const auto li = static_cast<Eigen::Index>(l);
    const Matrix& h = terms[l].unitary.matrix();
    for (Eigen::Index i = 0; i < ds; ++i) {
      for (Eigen::Index j = 0; j < ds; ++j) U(i * dsel + li, j * dsel + li) = h(i, j);
    }
  }
  const Matrix Ud = U.adjoint();
  Matrix Up = Matrix::Zero(2 * n1, 2 * n1);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n1; ++j) {
      Up(2 * i, 2 * j) = U(i, j);
      Up(2 * i + 1, 2 * j + 1) = Ud(i, j);
    }
  }
  DenseOperator U_prime(m + m1 + 1, std::move(Up));

  DenseOperator had(1);
  const double s = 1.0 / std::sqrt(2.0);
  had.matrix() << s, s, s, -s;
  DenseOperator G_tilde = kron(G, had);

  const Eigen::Index da = G_tilde.dim();
  const Vector g0 = G_tilde.matrix().col(0);
  DenseOperator refl(m1 + 1, 2.0 * g0 * g0.adjoint() - Matrix::Identity(da, da));
  DenseOperator sx(1);
  sx.matrix() << 0, 1, 1, 0;
  const DenseOperator sigma_x_a = kron(DenseOperator::identity(m + m1), sx);
  DenseOperator W = kron(DenseOperator::identity(m), refl) * sigma_x_a * U_prime;

  return BlockEncoding{m, m1, m1 + 1, std::move(G_tilde), std::move(W), std::move(U_prime)};
}

/// Columns |i>_m (x) G~|0>_{m'} for every system basis state i.
inline Matrix walk_input_columns(const BlockEncoding& be) {
  const auto ds = static_cast<Eigen::Index>(dim_of(be.m));
  const Eigen::Index da = be.G_tilde.dim();
  Matrix b = Matrix::Zero(ds * da, ds);
  const Vector g0 = be.G_tilde.matrix().col(0);
  for (Eigen::Index i = 0; i < ds; ++i) b.block(i * da, i, da, 1) = g0;
  return b;
}

/// <0| G~^dag W_H^k G~ |0> for k = 0..K.
inline std::vector<DenseOperator> walk_blocks(const BlockEncoding& be, int K) {
  const Matrix b0 = walk_input_columns(be);
  Matrix bk = b0;
  std::vector<DenseOperator> out;
  out.reserve(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    if (k > 0) bk = be.W_H.matrix() * bk;
    out.emplace_back(be.m, b0.adjoint() * bk);
  }
  return out;
}

/// Re Tr[<0| G~^dag W_H^k G~ |0>] for k = 0..K without forming the blocks.
inline std::vector<double> walk_block_traces(const BlockEncoding& be, int K) {
  const Matrix b0 = walk_input_columns(be);
  Matrix bk = b0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    if (k > 0) bk = be.W_H.matrix() * bk;
    out.push_back(b0.conjugate().cwiseProduct(bk).sum().real());
  }
  return out;
}

/// G~^dag W_H^k G~ on m + m' qubits; its |0>_{m'} block is T_k(H).
inline DenseOperator walk_unitary(const BlockEncoding& be, int k) {
  const DenseOperator g = kron(DenseOperator::identity(be.m), be.G_tilde);
  DenseOperator w = DenseOperator::identity(be.W_H.qubits());
  for (int i = 0; i < k; ++i) w = be.W_H * w;
  return g.adjoint() * w * g;
}

struct WeightedOperator {
  Complex coeff;
  DenseOperator unitary;
};

/// Gap-amplified Hamiltonian H' with (H')^2 |phi>|0> = (H|phi>)|0>.
class GapAmplified {
 public:
  int m = 0;
  int m1 = 0;
  DenseOperator H_prime;
  std::vector<WeightedOperator> unitary_terms;

  GapAmplified(int m_, int m1_, DenseOperator hp, std::vector<WeightedOperator> terms)
      : m(m_), m1(m1_), H_prime(std::move(hp)), unitary_terms(std::move(terms)) {
    auto es = std::make_shared<EigenSystem>(eigh(H_prime));
    const auto ds = static_cast<Eigen::Index>(dim_of(m));
    const Eigen::Index n = es->values.size();
    RealVector w = RealVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index i = 0; i < ds; ++i) w(k) += std::norm(es->vectors(i << m1, k));
    }
    eigen_ = std::move(es);
    block_weights_ = std::move(w);
  }

  const EigenSystem& eigensystem() const { return *eigen_; }

  /// Tr[<0_{m'_1}| exp(-i t H') |0_{m'_1}>] from the cached spectrum.
  Complex evolve_block_trace(double t) const {
    Complex s{0.0, 0.0};
    for (Eigen::Index k = 0; k < block_weights_.size(); ++k) {
      s += block_weights_(k) * std::exp(-kI * (t * eigen_->values(k)));
    }
    return s;
  }

 private:
  std::shared_ptr<const EigenSystem> eigen_;
  RealVector block_weights_;
};

inline GapAmplified build_gap_amplified(const HamiltonianSpec& spec) {
  if (spec.kind() != HamiltonianKind::ProjectorSum) {
    throw InputError("build_gap_amplified: spec must be a projector_sum");
  }
  const bool empty = spec.l1_norm() == 0.0;
  if (!empty && !spec.is_normalized()) throw InputError("build_gap_amplified: spec not normalized");
  const std::size_t L = spec.num_terms();
  const int m1 = ceil_log2(L + 1);
  if ((std::size_t{1} << m1) != L + 1) {
    throw InputError("build_gap_amplified: L + 1 = " + std::to_string(L + 1) +
                     " is not a power of two");
  }
  const int m = spec.qubits();
  const int nq = m + m1;
  require_dense_cap(nq);
  const auto ds = static_cast<Eigen::Index>(dim_of(m));
  const auto dsel = static_cast<Eigen::Index>(L + 1);

  std::vector<DenseOperator> proj;
  proj.reserve(L + 1);
  proj.push_back(DenseOperator::identity(m));  // H_0 := 1
  for (const auto& t : spec.terms()) proj.push_back(t.to_dense());

  Matrix hp = Matrix::Zero(ds * dsel, ds * dsel);
  for (std::size_t l = 1; l <= L; ++l) {
    const double a = spec.terms()[l - 1].coeff;
    if (a == 0.0) continue;
    const double ra = std::sqrt(a);
    const auto li = static_cast<Eigen::Index>(l);
    const Matrix& h = proj[l].matrix();
    for (Eigen::Index i = 0; i < ds; ++i) {
      for (Eigen::Index j = 0; j < ds; ++j) {
        hp(i * dsel + li, j * dsel) += ra * h(i, j);  // |l><0|
        hp(i * dsel, j * dsel + li) += ra * h(i, j);  // |0><l|
      }
    }
  }
  DenseOperator H_prime(nq, std::move(hp));

  std::vector<WeightedOperator> terms;
  if (!empty) {
    Vector col = Vector::Zero(dsel);
    for (std::size_t l = 1; l <= L; ++l) {
      col(static_cast<Eigen::Index>(l)) = std::sqrt(spec.terms()[l - 1].coeff);
    }
    const DenseOperator g_sel = complete_unitary(col, m1);
    DenseOperator r_sel = DenseOperator::identity(m1);
    r_sel(0, 0) = -1.0;  // exp(i pi |0><0|) = 1 - 2|0><0|
    Matrix u = Matrix::Zero(ds * dsel, ds * dsel);
    const Matrix id = Matrix::Identity(ds, ds);
    for (std::size_t l = 0; l <= L; ++l) {
      const auto li = static_cast<Eigen::Index>(l);
      const Matrix refl = 2.0 * proj[l].matrix() - id;
      for (Eigen::Index i = 0; i < ds; ++i) {
        for (Eigen::Index j = 0; j < ds; ++j) u(i * dsel + li, j * dsel + li) = refl(i, j);
      }
    }
    const DenseOperator U(nq, std::move(u));
    const DenseOperator G = kron(DenseOperator::identity(m), g_sel);
    const DenseOperator R = kron(DenseOperator::identity(m), r_sel);
    const DenseOperator Gd = G.adjoint();
    // H' = X G |0><0| + h.c. with X = (1 + U)/2 and |0><0| = (1 - R)/2
    terms.push_back({0.25, G});
    terms.push_back({-0.25, G * R});
    terms.push_back({0.25, U * G});
    terms.push_back({-0.25, U * G * R});
    terms.push_back({0.25, Gd});
    terms.push_back({-0.25, R * Gd});
    terms.push_back({0.25, Gd * U});
    terms.push_back({-0.25, R * Gd * U});
  }
  return GapAmplified(m, m1, std::move(H_prime), std::move(terms));
}

inline constexpr double kMaxEvolutionTime = 1e4;

/// exp(-i t H') on m + m'_1 qubits.
inline DenseOperator evolve(const GapAmplified& ga, double t) {
  if (!(std::abs(t) <= kMaxEvolutionTime)) {
    throw InputError("evolve: |t| = " + std::to_string(t) + " exceeds 1e4");
  }
  return spectral_apply(ga.eigensystem(), [t](double mu) { return std::exp(-kI * (t * mu)); });
}

}  // namespace pfdqc1
