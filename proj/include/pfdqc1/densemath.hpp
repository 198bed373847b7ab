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

// Dense complex linear algebra on qubit registers.
//
// Register convention: qubit 0 is the most significant tensor factor, and
// ancilla registers are always the trailing factor, so an operator on
// m system qubits and a ancillas is indexed as (sys << a) | anc.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pfdqc1/config.hpp"
#include "pfdqc1/errors.hpp"

namespace pfdqc1 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline std::size_t dim_of(int qubits) { return std::size_t{1} << qubits; }

/// Square complex matrix acting on `qubits` qubits (dimension 2^qubits).
class DenseOperator {
 public:
  DenseOperator() : qubits_(0), mat_(Matrix::Zero(1, 1)) {}

  explicit DenseOperator(int qubits)
      : qubits_(checked_qubits(qubits)),
        mat_(Matrix::Zero(static_cast<Eigen::Index>(dim_of(qubits)),
                          static_cast<Eigen::Index>(dim_of(qubits)))) {}

  DenseOperator(int qubits, Matrix mat) : qubits_(checked_qubits(qubits)), mat_(std::move(mat)) {
    const auto d = static_cast<Eigen::Index>(dim_of(qubits_));
    if (mat_.rows() != d || mat_.cols() != d) {
      throw InputError("DenseOperator: matrix is " + std::to_string(mat_.rows()) + "x" +
                       std::to_string(mat_.cols()) + ", expected " + std::to_string(d) +
                       "x" + std::to_string(d));
    }
  }

  /// Wraps a square matrix whose dimension must be a power of two.
  static DenseOperator from_matrix(Matrix mat) {
    if (mat.rows() != mat.cols() || mat.rows() == 0) {
      throw InputError("DenseOperator: matrix must be square and non-empty");
    }
    int q = 0;
    while ((Eigen::Index{1} << q) < mat.rows()) ++q;
    if ((Eigen::Index{1} << q) != mat.rows()) {
      throw InputError("DenseOperator: dimension " + std::to_string(mat.rows()) +
                       " is not a power of two");
    }
    return DenseOperator(q, std::move(mat));
  }

  static DenseOperator identity(int qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(qubits));
    return DenseOperator(qubits, Matrix::Identity(d, d));
  }

  static DenseOperator zero(int qubits) { return DenseOperator(qubits); }

  int qubits() const noexcept { return qubits_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }
  const Matrix& matrix() const noexcept { return mat_; }
  Matrix& matrix() noexcept { return mat_; }

  Complex operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }
  Complex& operator()(Eigen::Index r, Eigen::Index c) { return mat_(r, c); }

  DenseOperator adjoint() const { return DenseOperator(qubits_, mat_.adjoint()); }
  Complex trace() const { return mat_.trace(); }

  bool is_hermitian(double tol = tolerances().hermiticity) const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  bool is_unitary(double tol = tolerances().unitarity) const {
    const Matrix prod = mat_.adjoint() * mat_;
    return (prod - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
  }

  DenseOperator& operator+=(const DenseOperator& o) {
    require_same(o);
    mat_ += o.mat_;
    return *this;
  }
  DenseOperator& operator-=(const DenseOperator& o) {
    require_same(o);
    mat_ -= o.mat_;
    return *this;
  }
  DenseOperator& operator*=(Complex s) {
    mat_ *= s;
    return *this;
  }

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(Complex s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(DenseOperator a, Complex s) { return a *= s; }
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    a.require_same(b);
    return DenseOperator(a.qubits_, a.mat_ * b.mat_);
  }

 private:
  static int checked_qubits(int q) {
    if (q < 0 || q > 30) throw InputError("DenseOperator: qubit count out of range");
    return q;
  }
  void require_same(const DenseOperator& o) const {
    if (o.qubits_ != qubits_) {
      throw InputError("DenseOperator: qubit mismatch (" + std::to_string(qubits_) + " vs " +
                       std::to_string(o.qubits_) + ")");
    }
  }

  int qubits_;
  Matrix mat_;
};

/// 2x2 Pauli matrix for 'I', 'X', 'Y' or 'Z'.
inline Matrix pauli_matrix(char letter) {
  Matrix p(2, 2);
  switch (letter) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -kI, kI, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw InputError(std::string("unknown Pauli letter '") + letter + "'");
  }
  return p;
}

inline DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return DenseOperator(a.qubits() + b.qubits(), std::move(out));
}

struct EigenSystem {
  RealVector values;       // ascending
  DenseOperator vectors;   // columns are eigenvectors
};

inline EigenSystem eigh(const DenseOperator& a) {
  if (!a.is_hermitian()) throw NumericalError("eigh: input is not Hermitian");
  const Matrix sym = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), DenseOperator(a.qubits(), solver.eigenvectors())};
}

/// V f(diag(lambda)) V^dagger for a precomputed eigensystem.
template <class F>
DenseOperator spectral_apply(const EigenSystem& es, F&& f) {
  const Matrix& v = es.vectors.matrix();
  Vector fv(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) fv(i) = Complex(f(es.values(i)));
  Matrix out = v * fv.asDiagonal() * v.adjoint();
  return DenseOperator(es.vectors.qubits(), std::move(out));
}

template <class F>
DenseOperator herm_func(const DenseOperator& a, F&& f) {
  return spectral_apply(eigh(a), std::forward<F>(f));
}

/// Square root of a PSD operator; eigenvalues in [-psd_clamp, 0) are clamped to 0.
inline DenseOperator psd_sqrt(const DenseOperator& a) {
  const double clamp = tolerances().psd_clamp;
  return herm_func(a, [clamp](double x) {
    if (x < -clamp) throw NumericalError("psd_sqrt: eigenvalue " + std::to_string(x) + " < 0");
    return std::sqrt(std::max(x, 0.0));
  });
}

inline double trace_norm(const DenseOperator& a) {
  Eigen::BDCSVD<Matrix> svd(a.matrix());
  return svd.singularValues().sum();
}

inline double spectral_norm(const DenseOperator& a) {
  Eigen::BDCSVD<Matrix> svd(a.matrix());
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

inline double max_abs(const DenseOperator& a) { return a.matrix().cwiseAbs().maxCoeff(); }

/// <0_{m_anc}| W |0_{m_anc}> with the ancilla register as trailing factor.
inline DenseOperator block_00(const DenseOperator& w, int m_anc) {
  if (m_anc < 0 || m_anc > w.qubits()) {
    throw InputError("block_00: ancilla count " + std::to_string(m_anc) + " exceeds " +
                     std::to_string(w.qubits()) + " qubits");
  }
  const int m = w.qubits() - m_anc;
  const auto d = static_cast<Eigen::Index>(dim_of(m));
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = w(i << m_anc, j << m_anc);
  }
  return DenseOperator(m, std::move(out));
}

/// Tr[<0_{m_anc}| W |0_{m_anc}>] without materialising the block.
inline Complex block_trace(const DenseOperator& w, int m_anc) {
  if (m_anc < 0 || m_anc > w.qubits()) throw InputError("block_trace: bad ancilla count");
  const auto d = static_cast<Eigen::Index>(dim_of(w.qubits() - m_anc));
  Complex t{0.0, 0.0};
  for (Eigen::Index i = 0; i < d; ++i) t += w(i << m_anc, i << m_anc);
  return t;
}

}  // namespace pfdqc1
