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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pfdqc1/chebyshev.hpp"
#include "pfdqc1/random.hpp"

using namespace pfdqc1;

namespace {
double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST(BesselI, AtZero) {
  EXPECT_EQ(bessel_i(0, 0.0), 1.0);
  for (int k = 1; k < 6; ++k) EXPECT_EQ(bessel_i(k, 0.0), 0.0);
}

TEST(BesselI, FrozenValues) {
  EXPECT_NEAR(bessel_i(0, 1.0), 1.2660658777520084, 1e-15);
  EXPECT_NEAR(bessel_i(1, 1.0), 0.565159103992485, 1e-15);
  EXPECT_NEAR(bessel_i(5, 2.0) / 0.009825679323131702, 1.0, 1e-12);
  EXPECT_NEAR(bessel_i(0, 10.0) / 2815.7166284662544, 1.0, 1e-12);
  EXPECT_NEAR(bessel_i(3, 0.5) / 0.002645111968990286, 1.0, 1e-12);
}

TEST(BesselI, MatchesIntegralRepresentation) {
  for (double beta : {0.1, 0.5, 1.0, 3.0, 7.5, 20.0}) {
    for (int k = 0; k <= 12; ++k) {
      const double ref = oracle::bessel_integral(k, beta);
      // the quadrature sums O(e^beta) terms, so its rounding floor is absolute
      const double tol = 1e-10 * ref + 1e-14 * std::exp(beta);
      EXPECT_NEAR(bessel_i(k, beta), ref, tol) << "k=" << k << " beta=" << beta;
    }
  }
}

TEST(BesselI, RejectsOutOfRange) {
  EXPECT_THROW(bessel_i(0, 701.0), InputError);
  EXPECT_THROW(bessel_i(-1, 1.0), InputError);
  EXPECT_THROW(bessel_i(0, -1.0), InputError);
}

TEST(PlanChebyshev, OrderFormula) {
  EXPECT_EQ(plan_chebyshev(3, 1.0, std::exp2(-6)).K, 14);
  EXPECT_EQ(plan_chebyshev(1, 0.0, 1.0).K, 3);
  const auto p = plan_chebyshev(2, 1.5, 1e-3);
  EXPECT_EQ(p.K, static_cast<int>(std::ceil(2 + std::numbers::e * 1.5 + std::log2(1e3) + 2)));
  EXPECT_DOUBLE_EQ(p.coeffs[0], bessel_i(0, 1.5));
  EXPECT_DOUBLE_EQ(p.coeffs[1], -bessel_i(1, 1.5));
  EXPECT_DOUBLE_EQ(p.coeffs[2], bessel_i(2, 1.5));
  EXPECT_THROW(plan_chebyshev(1, 1.0, 0.0), InputError);
}

TEST(ChebyshevOp, BaseCases) {
  Rng rng(1);
  const DenseOperator h = random_hermitian(2, rng);
  EXPECT_LT(max_diff(chebyshev_op(h, 0).matrix(), Matrix::Identity(4, 4)), 1e-15);
  EXPECT_LT(max_diff(chebyshev_op(h, 1).matrix(), h.matrix()), 1e-15);
  const Matrix t2 = 2.0 * h.matrix() * h.matrix() - Matrix::Identity(4, 4);
  EXPECT_LT(max_diff(chebyshev_op(h, 2).matrix(), t2), 1e-14);
}

TEST(ChebyshevOp, SpectralOracle) {
  Rng rng(2);
  for (int q = 1; q <= 3; ++q) {
    const DenseOperator h = random_hermitian(q, rng);
    for (int k : {3, 7, 15, 30}) {
      EXPECT_LT(max_diff(chebyshev_op(h, k).matrix(), oracle::chebyshev_t(h.matrix(), k)), 1e-9);
    }
  }
}

TEST(ChebyshevOp, RejectsLargeNorm) {
  EXPECT_THROW(chebyshev_op(DenseOperator::identity(1) * Complex(1.5), 2), InputError);
}

TEST(BuildSK, BetaZeroIsIdentity) {
  Rng rng(3);
  const DenseOperator h = random_hermitian(2, rng);
  const auto plan = plan_chebyshev(2, 0.0, 1e-3);
  EXPECT_LT(max_diff(build_s_k(h, plan).matrix(), Matrix::Identity(4, 4)), 1e-15);
}

TEST(BuildSK, ZeroHamiltonian) {
  for (double beta : {0.5, 2.0, 5.0}) {
    const auto plan = plan_chebyshev(3, beta, 1e-3);
    const DenseOperator s = build_s_k(DenseOperator::zero(3), plan);
    EXPECT_LE(std::abs(s.trace().real() - 8.0), 1e-3 / 2);
  }
}

TEST(BuildSK, ThreeQubitBound) {
  Rng rng(4);
  for (int i = 0; i < 5; ++i) {
    const DenseOperator h = random_hermitian(3, rng);
    const auto plan = plan_chebyshev(3, 1.0, 1e-3);
    const double err = oracle::trace_norm(build_s_k(h, plan).matrix() - oracle::expm_neg(h.matrix(), 1.0));
    EXPECT_LE(err, 5e-4);
    EXPECT_LE(err, tail_bound(plan, 3));
  }
}

TEST(TailBound, Formula) {
  auto plan = plan_chebyshev(3, 1.0, std::exp2(-6));
  ASSERT_EQ(plan.K, 14);
  EXPECT_NEAR(tail_bound(plan, 3), 0.0026545720981045362, 1e-17);
  const double b = tail_bound(plan, 3);
  plan.K = 15;
  EXPECT_NEAR(tail_bound(plan, 3), b / 2, 1e-18);
  plan.K = 2;
  EXPECT_THROW(tail_bound(plan, 3), InputError);
}

// Truncation bound over the acceptance grid, at smaller size.
TEST(BuildSK, OperatorBoundGrid) {
  Rng rng(5);
  for (int m = 1; m <= 4; ++m) {
    const DenseOperator h = random_hermitian(m, rng);
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      for (double eps : {1e-2, 1e-4}) {
        const auto plan = plan_chebyshev(m, beta, eps);
        const double err = oracle::trace_norm(build_s_k(h, plan).matrix() - oracle::expm_neg(h.matrix(), beta));
        EXPECT_LE(err, eps / 2) << "m=" << m << " beta=" << beta << " eps=" << eps;
      }
    }
  }
}

TEST(BesselI, PartialSumBelowHalfExp) {
  for (double beta : {0.1, 1.0, 4.0, 12.0}) {
    double s = 0.0;
    for (int k = 1; k <= 60; ++k) s += bessel_i(k, beta);
    EXPECT_LE(s, std::exp(beta) / 2);
  }
}
