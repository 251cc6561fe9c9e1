// Copyright 2026 The umpc Authors
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

#include "umpc/baselines.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stats.hpp"
#include "umpc/error.hpp"

namespace umpc {
namespace {

Matrix random_matrix(std::uint32_t t, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix a{t, std::vector<double>(static_cast<std::size_t>(t) * t)};
  for (auto& x : a.a) x = u(g);
  return a;
}

// Expectation of fhat over both randomizer outputs, by enumeration.
double brute_expectation(std::uint32_t i, std::uint32_t j, const Matrix& a,
                         double beta) {
  double s = 0.0;
  for (std::uint32_t y = 1; y <= a.t; ++y) {
    for (std::uint32_t z = 1; z <= a.t; ++z) {
      s += bell_transition(i, y, a.t, beta) * bell_transition(j, z, a.t, beta) *
           bell_fhat(y, z, a, beta);
    }
  }
  return s;
}

TEST(Beta, ExactAndRelaxed) {
  EXPECT_DOUBLE_EQ(bell_beta_exact(1.0, 64), 1.0 / (std::expm1(1.0) / 64 + 1));
  EXPECT_DOUBLE_EQ(bell_beta_relaxed(1.0, 64), 64.0 / 65.0);
  // Relaxed flips more often than needed.
  EXPECT_GT(bell_beta_relaxed(1.0, 64), bell_beta_exact(1.0, 64));
  EXPECT_THROW(bell_beta_exact(0.0, 4), UsageError);
  EXPECT_NO_THROW(BellConfig::from_epsilon(8, 1).validate());
  EXPECT_THROW((BellConfig{4, 1.0, 1.0}.validate()), UsageError);
}

TEST(Discretize, Examples) {
  EXPECT_EQ(discretize(0.0, 4), 1u);
  EXPECT_DOUBLE_EQ(representative(1, 4), 0.125);
  EXPECT_EQ(discretize(1.0, 4), 4u);
  EXPECT_EQ(discretize(0.25, 4), 1u);
  EXPECT_EQ(discretize(0.26, 4), 2u);
  EXPECT_THROW(discretize(1.01, 4), DomainError);
  EXPECT_THROW(representative(5, 4), UsageError);
}

TEST(Discretize, HalfBinBound) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::uint32_t t : {1u, 3u, 16u, 64u}) {
    for (int i = 0; i < 10000; ++i) {
      const double x = u(g);
      EXPECT_LE(std::abs(x - representative(discretize(x, t), t)),
                0.5 / t + 1e-15);
    }
  }
}

TEST(Randomizer, Identity) {
  Rng rng(2);
  for (std::uint32_t b = 1; b <= 8; ++b) EXPECT_EQ(bell_randomizer(b, 8, 0.0, rng), b);
}

TEST(Randomizer, UniformAtBetaOne) {
  Rng rng(3);
  std::vector<std::uint64_t> v(100000);
  for (auto& x : v) x = bell_randomizer(3, 10, 1.0, rng) - 1;
  EXPECT_GT(stats::chi_square_uniform(v, 10).p_value, 0.01);
}

TEST(Randomizer, TransitionMatrix) {
  Rng rng(4);
  const std::uint32_t t = 3;
  const double beta = 0.5;
  for (std::uint32_t x = 1; x <= t; ++x) {
    std::vector<double> c(t, 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) c[bell_randomizer(x, t, beta, rng) - 1] += 1;
    for (std::uint32_t y = 1; y <= t; ++y) {
      EXPECT_NEAR(c[y - 1] / draws, bell_transition(x, y, t, beta), 0.01);
    }
  }
}

TEST(Randomizer, LocalPrivacyRatio) {
  for (double eps : {0.1, 1.0, 3.0}) {
    for (std::uint32_t t : {2u, 8u, 64u}) {
      const double beta = bell_beta_exact(eps, t);
      double worst = 0.0;
      for (std::uint32_t x = 1; x <= t; ++x) {
        for (std::uint32_t x2 = 1; x2 <= t; ++x2) {
          for (std::uint32_t y = 1; y <= t; ++y) {
            worst = std::max(worst, bell_transition(x, y, t, beta) /
                                        bell_transition(x2, y, t, beta));
          }
        }
      }
      EXPECT_LE(worst, std::exp(eps) * (1 + 1e-12));
      EXPECT_NEAR(worst, std::exp(eps), 1e-9 * std::exp(eps));
    }
  }
}

TEST(Fhat, IdentityAtBetaZero) {
  std::mt19937_64 g(5);
  const Matrix a = random_matrix(5, g);
  for (std::uint32_t i = 1; i <= 5; ++i) {
    for (std::uint32_t j = 1; j <= 5; ++j) {
      EXPECT_DOUBLE_EQ(bell_fhat(i, j, a, 0.0), a(i, j));
    }
  }
}

TEST(Fhat, UnbiasedForAllSmallT) {
  std::mt19937_64 g(6);
  std::uniform_real_distribution<double> ub(0.0, 0.95);
  for (std::uint32_t t = 1; t <= 8; ++t) {
    for (int rep = 0; rep < 100; ++rep) {
      const Matrix a = random_matrix(t, g);
      const double beta = ub(g);
      const Matrix f = bell_fhat_matrix(a, beta);
      for (std::uint32_t i = 1; i <= t; ++i) {
        for (std::uint32_t j = 1; j <= t; ++j) {
          ASSERT_NEAR(brute_expectation(i, j, a, beta), a(i, j), 1e-10);
          ASSERT_NEAR(f(i, j), bell_fhat(i, j, a, beta), 1e-12);
        }
      }
    }
  }
}

TEST(Fhat, ConstantMatrix) {
  // For A = c 1 1^T the centering removes (1 - beta) twice: fhat = c.
  const std::uint32_t t = 4;
  const Matrix a{t, std::vector<double>(16, 0.7)};
  for (double beta : {0.1, 0.5, 0.9}) {
    for (std::uint32_t i = 1; i <= t; ++i) {
      EXPECT_NEAR(bell_fhat(i, 2, a, beta), 0.7, 1e-12);
      EXPECT_NEAR(brute_expectation(i, 2, a, beta), 0.7, 1e-12);
    }
  }
}

TEST(KernelMatrix, GiniAndUnsupported) {
  const Matrix a = kernel_matrix(builtin_kernel("gini"), 4);
  EXPECT_DOUBLE_EQ(a(1, 4), 0.75);
  EXPECT_DOUBLE_EQ(a(2, 2), 0.0);
  EXPECT_THROW(kernel_matrix(builtin_kernel("kendall"), 4), UnsupportedKernel);
}

TEST(BellEstimate, SingleBin) {
  Rng rng(7);
  const Dataset d = Dataset::from_scalars({0.1, 0.9, 0.4});
  const BellResult r = bell_estimate(d, builtin_kernel("gini"), 1, 1.0, rng);
  EXPECT_DOUBLE_EQ(r.estimate, 0.0);
  EXPECT_DOUBLE_EQ(r.discretized, 0.0);
}

TEST(BellEstimate, TwoPartyMean) {
  Rng rng(8);
  const Dataset d = Dataset::from_scalars({0.1, 0.8});
  const std::uint32_t t = 8;
  const double target = kernel_matrix(builtin_kernel("gini"), t)(
      discretize(0.1, t), discretize(0.8, t));
  std::vector<double> v(200000);
  for (auto& x : v) x = bell_estimate(d, builtin_kernel("gini"), t, 2.0, rng).estimate;
  EXPECT_NEAR(stats::mean(v), target, 3 * std::sqrt(stats::variance(v) / v.size()));
}

TEST(BellEstimate, LargeEpsilonApproachesDiscretized) {
  Rng rng(9);
  Rng data_rng(10);
  const Dataset d = gen_synthetic(200, SyntheticKind::kUniform01, data_rng);
  const BellResult r = bell_estimate(d, builtin_kernel("gini"), 16, 30.0, rng);
  EXPECT_LT(r.beta, 1e-10);
  EXPECT_NEAR(r.estimate, r.discretized, 1e-6);
}

TEST(BellEstimate, MseWithinBound) {
  Rng rng(11);
  Rng data_rng(12);
  const std::size_t n = 200;
  const Dataset d = gen_synthetic(n, SyntheticKind::kUniform01, data_rng);
  const BellConfig cfg = BellConfig::from_epsilon(16, 1.0);
  double se = 0;
  const int reps = 2000;
  for (int i = 0; i < reps; ++i) {
    const BellResult r = bell_estimate(d, builtin_kernel("gini"), cfg, rng);
    se += (r.estimate - r.discretized) * (r.estimate - r.discretized);
  }
  EXPECT_LE(se / reps, bell_mse_bound(n, cfg.beta) * 1.1);
}

TEST(BellEstimate, KendallJointBins) {
  Rng rng(13);
  Rng data_rng(14);
  const Dataset d = gen_synthetic(50, SyntheticKind::kUniform01Pairs, data_rng);
  const BellResult r = bell_estimate(d, builtin_kernel("kendall"), 4, 1.0, rng);
  EXPECT_EQ(r.bins, 16u);
  EXPECT_DOUBLE_EQ(r.beta, bell_beta_exact(1.0, 16));
  EXPECT_THROW(bell_estimate(d, builtin_kernel("kendall"), 33, 1.0, rng),
               UnsupportedKernel);
  EXPECT_THROW(bell_estimate(d, builtin_kernel("auc"), 4, 1.0, rng),
               UnsupportedKernel);
}

TEST(CostEval, Examples) {
  CostParams p;
  p.n = 100;
  p.t = 256;
  p.ell = 40;
  EXPECT_DOUBLE_EQ(cost_eval(CostProtocol::kBell, p).bits, 1024000.0);
  EXPECT_DOUBLE_EQ(cost_eval(CostProtocol::kUmpcDis, p).server_ops, 100.0);
  EXPECT_DOUBLE_EQ(cost_eval(CostProtocol::kUmpcHF, p).server_ops, 100.0);
  EXPECT_NEAR(cost_eval(CostProtocol::kGhaziSM, p).bits /
                  cost_eval(CostProtocol::kGhazi, p).bits,
              std::log2(100.0), 1e-12);
}

TEST(CostEval, NonNegativeAndNamed) {
  CostParams p;
  for (CostProtocol c : all_cost_protocols()) {
    const CostReport r = cost_eval(c, p);
    EXPECT_EQ(r.protocol, to_string(c));
    EXPECT_GE(r.bits, 0);
    EXPECT_GE(r.party_ops, 0);
    EXPECT_GE(r.server_ops, 0);
    EXPECT_GE(r.mse, 0);
  }
  p.n = 0;
  EXPECT_THROW(cost_eval(CostProtocol::kBell, p), UsageError);
}

TEST(CostEval, HonestFractionCheaperThanFullNoise) {
  CostParams p;
  EXPECT_LT(cost_eval(CostProtocol::kUmpcHF, p).bits,
            cost_eval(CostProtocol::kUmpcDis, p).bits);
}

}  // namespace
}  // namespace umpc
