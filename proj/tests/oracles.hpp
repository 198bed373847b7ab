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

// Independent reference computations used only by the tests. None of these
// call into the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// I_k(beta) = (1/pi) int_0^pi exp(beta cos t) cos(k t) dt, trapezoid rule
/// (spectrally accurate for periodic integrands).
inline double bessel_integral(int k, double beta, int n = 4000) {
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = std::numbers::pi * i / n;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * std::exp(beta * std::cos(t)) * std::cos(k * t);
  }
  return s / n;
}

inline Mat pauli(char c) {
  Mat p(2, 2);
  switch (c) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: p = Mat::Identity(2, 2);
  }
  return p;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker product of single-qubit Paulis, first letter most significant.
inline Mat pauli_string(const std::string& s) {
  Mat out = Mat::Identity(1, 1);
  for (char c : s) out = kron(out, pauli(c));
  return out;
}

/// exp(-beta H) by Pade scaling and squaring.
inline Mat expm_neg(const Mat& h, double beta) { return Mat((-beta * h).exp()); }

inline double partition(const Mat& h, double beta) { return expm_neg(h, beta).trace().real(); }

/// T_k(H) via cos(k arccos x) on the spectrum (H Hermitian, ||H|| <= 1).
inline Mat chebyshev_t(const Mat& h, int k) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::cos(k * std::acos(std::clamp(v(i), -1.0, 1.0)));
  return es.eigenvectors() * v.cast<C>().asDiagonal() * es.eigenvectors().adjoint();
}

inline double trace_norm(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

/// CNOT from qubit `control` to qubit `target` on an n-qubit register
/// (qubit 0 most significant), as a product of projector-weighted Kroneckers.
inline Mat cnot(int n, int control, int target) {
  Mat p0 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  Mat p1 = Mat::Zero(2, 2);
  p1(1, 1) = 1;
  Mat a = Mat::Identity(1, 1);
  Mat b = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    a = kron(a, q == control ? p0 : Mat(Mat::Identity(2, 2)));
    b = kron(b, q == control ? p1 : (q == target ? pauli('X') : Mat(Mat::Identity(2, 2))));
  }
  return a + b;
}

/// Extended trace circuit on (system, a, b): CNOT ladder a_i -> b_i, then W
/// acting on (system, a).
inline Mat extended_circuit(const Mat& w, int sys_qubits, int anc) {
  const int n = sys_qubits + 2 * anc;
  Mat ladder = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (int i = 0; i < anc; ++i) ladder = cnot(n, sys_qubits + i, sys_qubits + anc + i) * ladder;
  const Mat wi = kron(w, Mat::Identity(Eigen::Index{1} << anc, Eigen::Index{1} << anc));
  return wi * ladder;
}

/// Trace of the ancilla-|0> block with ancillas as the trailing factor.
inline C block_trace(const Mat& w, int anc) {
  C s = 0;
  const Eigen::Index da = Eigen::Index{1} << anc;
  for (Eigen::Index i = 0; i < w.rows() / da; ++i) s += w(i * da, i * da);
  return s;
}

/// Hoeffding planner: smallest Q with 2 exp(-Q eps^2 / (2 * 4^n)) <= delta0.
inline double hoeffding_q(int n, double eps, double delta0) {
  return std::ceil(2.0 * std::pow(4.0, n) / (eps * eps) * std::log(2.0 / delta0));
}

}  // namespace oracle
