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
#include <vector>

#include "oracles.hpp"
#include "pfdqc1/hst.hpp"
#include "pfdqc1/random.hpp"

using namespace pfdqc1;

namespace {

/// (1/sqrt(2 pi)) int exp(-y^2/2) cos(y sqrt(2 beta lambda)) dy by a fine
/// midpoint rule on [-40, 40].
double gaussian_fourier(double beta, double lambda) {
  const int n = 400000;
  const double a = -40.0;
  const double h = 80.0 / n;
  const double w = std::sqrt(2.0 * beta * lambda);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = a + (i + 0.5) * h;
    s += std::exp(-0.5 * y * y) * std::cos(y * w);
  }
  return s * h / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

TEST(PlanHst, FormulaExample) {
  const auto p = plan_hst(2, 1.0, std::exp2(-8));
  EXPECT_EQ(p.J, 158);
  EXPECT_NEAR(p.delta_y, 0.12012653667602105, 1e-15);
  EXPECT_NEAR(p.weights[0], p.delta_y / std::sqrt(2.0 * std::numbers::pi), 1e-17);
  ASSERT_EQ(p.weights.size(), 159u);
  EXPECT_NEAR(p.times[10], 10 * p.delta_y * std::sqrt(2.0), 1e-14);
}

TEST(PlanHst, BetaZero) {
  const auto p = plan_hst(3, 0.0, 0.125);
  EXPECT_EQ(p.J, static_cast<int>(std::ceil(12.0 * 6.0)));
  EXPECT_NEAR(p.delta_y, 1.0 / (2.0 * std::sqrt(6.0)), 1e-15);
  for (double t : p.times) EXPECT_EQ(t, 0.0);
}

TEST(PlanHst, RejectsEpsAboveOne) {
  EXPECT_THROW(plan_hst(1, 1.0, 1.5), InputError);
  EXPECT_THROW(plan_hst(1, 1.0, 0.0), InputError);
  EXPECT_THROW(plan_hst(1, -1.0, 0.5), InputError);
}

TEST(ScalarQuadrature, Examples) {
  const double eps = 1e-3;
  const auto p = plan_hst(2, 1.0, eps);
  EXPECT_NEAR(scalar_quadrature(p, 0.0), 1.0, eps);
  const auto p0 = plan_hst(2, 0.0, eps);
  for (double lam : {0.0, 0.3, 1.0}) EXPECT_NEAR(scalar_quadrature(p0, lam), 1.0, eps);
  EXPECT_LE(std::abs(scalar_quadrature(p, 1.0) - std::exp(-1.0)), eps / (4.0 * 4));
}

TEST(ScalarQuadrature, IntegralOracle) {
  EXPECT_NEAR(gaussian_fourier(1.0, 1.0), std::exp(-1.0), 1e-12);
  for (double beta : {0.5, 2.0}) {
    const auto p = plan_hst(3, beta, 1e-4);
    for (double lam : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      EXPECT_LE(std::abs(scalar_quadrature(p, lam) - gaussian_fourier(beta, lam)), 1e-4 / (4.0 * 8));
    }
  }
}

TEST(ScalarQuadrature, GridError) {
  for (int m = 1; m <= 3; ++m) {
    for (double beta : {0.5, 1.0, 5.0}) {
      const double eps = 1e-3;
      const auto p = plan_hst(m, beta, eps);
      double worst = 0.0;
      for (int g = 0; g <= 1000; ++g) {
        const double lam = g / 1000.0;
        worst = std::max(worst, std::abs(scalar_quadrature(p, lam) - std::exp(-beta * lam)));
      }
      EXPECT_LE(worst, eps / (4.0 * static_cast<double>(dim_of(m))));
    }
  }
}

TEST(BuildXJ, ZeroHamiltonian) {
  const auto p = plan_hst(2, 1.0, 1e-2);
  const DenseOperator x = build_x_j(DenseOperator::zero(2), p);
  const double s = scalar_quadrature(p, 0.0);
  EXPECT_LT((x.matrix() - s * Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildXJ, RankOneProjector) {
  Rng rng(1);
  const Vector v = random_state(4, rng);
  const DenseOperator pi(2, v * v.adjoint());
  const auto p = plan_hst(2, 1.0, 1e-2);
  const DenseOperator x = build_x_j(pi, p);
  const double on = scalar_quadrature(p, 1.0);
  const double off = scalar_quadrature(p, 0.0);
  const Matrix expect = on * pi.matrix() + off * (Matrix::Identity(4, 4) - pi.matrix());
  EXPECT_LT((x.matrix() - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildXJ, RandomPsdBound) {
  Rng rng(2);
  for (int i = 0; i < 4; ++i) {
    const DenseOperator h = random_psd(3, rng);
    for (double beta : {0.5, 2.0}) {
      const double eps = 1e-3;
      const auto p = plan_hst(3, beta, eps);
      const double err = oracle::trace_norm(build_x_j(h, p).matrix() - oracle::expm_neg(h.matrix(), beta));
      EXPECT_LE(err, eps / 4);
    }
  }
}

TEST(BuildXJ, RejectsIndefinite) {
  const auto p = plan_hst(1, 1.0, 0.1);
  EXPECT_THROW(build_x_j(DenseOperator(1, oracle::pauli('Z')), p), InputError);
  EXPECT_THROW(build_x_j(DenseOperator::identity(1) * Complex(1.5), p), InputError);
}

TEST(HstTraceCombination, Examples) {
  const auto p = plan_hst(2, 1.0, 1e-2);
  const double M = 4.0;
  std::vector<double> all_m(static_cast<std::size_t>(p.J) + 1, M);
  EXPECT_NEAR(hst_trace_combination(all_m, p, M), scalar_quadrature(p, 0.0) * M, 1e-13);
  std::vector<double> zeros(static_cast<std::size_t>(p.J) + 1, 0.0);
  EXPECT_NEAR(hst_trace_combination(zeros, p, M), p.delta_y / std::sqrt(2.0 * std::numbers::pi) * M, 1e-15);
  EXPECT_THROW(hst_trace_combination(std::vector<double>(3, 0.0), p, M), InputError);
}
