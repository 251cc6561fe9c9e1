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

#include "umpc/evaluation.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "stats.hpp"
#include "umpc/error.hpp"

namespace umpc {
namespace {

KernelSpec product_kernel() {
  return custom_kernel("xy", 2, 1, 1, 0, 1, [](std::span<const Row> r) {
    return r[0][0] * r[1][0];
  });
}

TEST(CompleteUstat, Examples) {
  EXPECT_DOUBLE_EQ(complete_ustat(Dataset::from_scalars({0, 1}),
                                  builtin_kernel("gini")),
                   1.0);
  EXPECT_DOUBLE_EQ(complete_ustat(Dataset::from_scalars({2, 2, 5}),
                                  builtin_kernel("dup")),
                   1.0 / 3);
  const Dataset concordant(2, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8});
  EXPECT_DOUBLE_EQ(complete_ustat(concordant, builtin_kernel("kendall")), 1.0);
}

TEST(CompleteUstat, GeneralArity) {
  const KernelSpec k = custom_kernel(
      "max3", 3, 1, 1, 0, 1, [](std::span<const Row> r) {
        return std::max({r[0][0], r[1][0], r[2][0]});
      });
  // Triples of {0.1, 0.2, 0.3, 0.4}: maxima 0.3, 0.4, 0.4, 0.4.
  EXPECT_NEAR(complete_ustat(Dataset::from_scalars({0.1, 0.2, 0.3, 0.4}), k),
              1.5 / 4, 1e-15);
}

TEST(CompleteUstat, Guards) {
  EXPECT_THROW(complete_ustat(Dataset::from_scalars({0.5}), builtin_kernel("gini")),
               UsageError);
  Rng rng(1);
  const Dataset big = gen_synthetic(20000, SyntheticKind::kUniform01, rng);
  EXPECT_THROW(complete_ustat(big, builtin_kernel("gini")), ScaleError);
}

TEST(IncompleteUstat, Examples) {
  const Dataset d = Dataset::from_scalars({0.1, 0.5, 0.9, 0.3});
  const KernelSpec k = builtin_kernel("gini");
  Rng rng(2);
  const Hypergraph full = uniform_without_replacement(6, 2, 4, rng);
  EXPECT_NEAR(incomplete_ustat(d, full, k), complete_ustat(d, k), 1e-15);
  EXPECT_DOUBLE_EQ(incomplete_ustat(d, Hypergraph(4, 2, {0, 2}), k), 0.8);
  EXPECT_THROW(incomplete_ustat(d, Hypergraph(4, 2), k), UsageError);
}

TEST(IncompleteUstat, UnbiasedUnderUniformSampling) {
  Rng rng(3);
  const Dataset d = gen_synthetic(40, SyntheticKind::kUniform01, rng);
  const KernelSpec k = builtin_kernel("gini");
  const double ref = complete_ustat(d, k);
  std::vector<double> v(10000);
  for (auto& x : v) x = incomplete_ustat(d, uniform_without_replacement(30, 2, 40, rng), k);
  EXPECT_NEAR(stats::mean(v), ref, 3 * std::sqrt(stats::variance(v) / v.size()));
}

TEST(Bounds, EincExamples) {
  EXPECT_EQ(einc_bound(6, 6), 0.0);
  EXPECT_DOUBLE_EQ(einc_bound(6, 3), 0.05);
  EXPECT_DOUBLE_EQ(einc_bound(6, 1), 0.25);
  EXPECT_THROW(einc_bound(6, 0), UsageError);
}

TEST(Bounds, EdpExamples) {
  for (double n : {10.0, 100.0, 4521.0}) {
    EXPECT_NEAR(edp_theory(2, 1, 1, n), 8 / (n * n), 1e-15);
  }
  EXPECT_EQ(edp_theory(2, 1, std::numeric_limits<double>::infinity(), 10), 0.0);
  EXPECT_NEAR(edp_theory(3, 1, 2, 50) * 4, edp_theory(3, 1, 1, 50), 1e-18);
}

TEST(Bounds, HoeffdingExamples) {
  EXPECT_DOUBLE_EQ(hoeffding_variance(0.3, 0.7, 2), 0.7);
  for (double n : {3.0, 10.0, 1000.0}) {
    EXPECT_LT(hoeffding_variance(0.25, 0.25, n), 4 / n);
  }
  EXPECT_EQ(hoeffding_variance(0, 0, 50), 0.0);
}

TEST(Sigma, MomentIntegralsForProductKernel) {
  // Midpoint rule over [0,1]^2 for E[XY | X] and XY.
  const int grid = 400;
  double m1 = 0, m1sq = 0, m2 = 0, m2sq = 0;
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 0.5) / grid;
    double cond = 0;
    for (int j = 0; j < grid; ++j) {
      const double y = (j + 0.5) / grid;
      cond += x * y / grid;
      m2 += x * y;
      m2sq += x * y * x * y;
    }
    m1 += cond / grid;
    m1sq += cond * cond / grid;
  }
  const double cells = double(grid) * grid;
  const double sigma1 = m1sq - m1 * m1;
  const double sigma2 = m2sq / cells - (m2 / cells) * (m2 / cells);
  EXPECT_NEAR(sigma1, 1.0 / 48, 1e-5);
  EXPECT_NEAR(sigma2, 7.0 / 144, 1e-5);
}

TEST(Sigma, PlugInEstimatesNearTruth) {
  Rng rng(4);
  const Dataset d = gen_synthetic(2000, SyntheticKind::kUniform01, rng);
  const SigmaEstimates s = sigma_estimates(d, product_kernel());
  EXPECT_NEAR(s.sigma1, 1.0 / 48, 0.003);
  EXPECT_NEAR(s.sigma2, 7.0 / 144, 0.004);
}

TEST(Hoeffding, ResampledVarianceMatches) {
  Rng rng(5);
  const KernelSpec k = product_kernel();
  const std::size_t n = 30;
  std::vector<double> v(5000);
  for (auto& x : v) x = complete_ustat(gen_synthetic(n, SyntheticKind::kUniform01, rng), k);
  const double theory = hoeffding_variance(1.0 / 48, 7.0 / 144, n);
  EXPECT_NEAR(stats::variance(v) / theory, 1.0, 0.1);
}

TEST(IncExperiment, WithinBoundAndBalancedNoWorse) {
  Rng rng(6);
  const Dataset d = gen_synthetic(200, SyntheticKind::kCategorical, rng);
  const KernelSpec k = builtin_kernel("dup");
  const double big_n = 199.0 * 100;
  const std::uint64_t m = 400;
  const Estimate bal = inc_experiment(d, k, SamplerKind::kBalanced, m, 3000, 1);
  const Estimate uni = inc_experiment(d, k, SamplerKind::kUniform, m, 3000, 2);
  const Estimate ber = inc_experiment(d, k, SamplerKind::kBernoulli, m, 3000, 3);
  const double bound = einc_bound(big_n, m) * 1.1;
  EXPECT_LE(bal.mean, bound);
  EXPECT_LE(uni.mean, bound);
  EXPECT_LE(ber.mean, bound);
  EXPECT_LE(bal.mean, uni.mean + 3 * std::hypot(bal.se, uni.se));
}

TEST(MseExperiment, NoiseDisabledHasNoPrivacyError) {
  Rng rng(7);
  MseConfig cfg;
  cfg.data = gen_synthetic(60, SyntheticKind::kUniform01, rng);
  cfg.kernel = builtin_kernel("gini");
  cfg.edges = 200;
  cfg.noise.epsilon = std::numeric_limits<double>::infinity();
  cfg.repetitions = 20;
  const MseReport r = mse_experiment(cfg);
  EXPECT_EQ(r.e_dp.mean, 0.0);
  EXPECT_EQ(r.edp_theory, 0.0);
  EXPECT_TRUE(r.dp_calibrated);
  EXPECT_NEAR(r.mse.mean, r.e_inc.mean, 1e-12);
  EXPECT_NEAR(r.conditional_mse.mean, r.e_inc.mean, 1e-12);
  EXPECT_EQ(r.repetitions, 20u);
  EXPECT_GT(r.hoeffding, 0.0);
}

TEST(MseExperiment, DeterministicAndAccountsBits) {
  Rng rng(8);
  MseConfig cfg;
  cfg.data = gen_synthetic(40, SyntheticKind::kUniform01, rng);
  cfg.kernel = builtin_kernel("gini");
  cfg.edges = 100;
  cfg.repetitions = 10;
  cfg.seed = 77;
  const MseReport a = mse_experiment(cfg);
  const MseReport b = mse_experiment(cfg);
  EXPECT_EQ(a.mse.mean, b.mse.mean);
  EXPECT_EQ(a.mean_bits, 100.0 * 80 + 100.0 * 240 + 2.0 * 40 * 39 * 40 + 40 * 40);
  EXPECT_EQ(a.mean_rounds, 4.0);
}

TEST(MseExperiment, ConditionalMseTracksEmpirical) {
  Rng rng(9);
  MseConfig cfg;
  cfg.data = gen_synthetic(50, SyntheticKind::kUniform01, rng);
  cfg.kernel = builtin_kernel("gini");
  cfg.edges = 300;
  cfg.repetitions = 4000;
  const MseReport r = mse_experiment(cfg);
  EXPECT_NEAR(r.mse.mean, r.conditional_mse.mean,
              4 * std::hypot(r.mse.se, r.conditional_mse.se));
  EXPECT_NEAR(r.e_dp.mean / r.edp_theory, 1.0, 0.15);
}

TEST(MseExperiment, Rejections) {
  MseConfig cfg;
  cfg.data = Dataset::from_scalars({0.1, 0.2, 0.3});
  cfg.kernel = builtin_kernel("gini");
  cfg.edges = 4;
  EXPECT_THROW(mse_experiment(cfg), UsageError);
  cfg.edges = 1;
  cfg.repetitions = 0;
  EXPECT_THROW(mse_experiment(cfg), UsageError);
}

TEST(Reproduce, PresetsProduceTables) {
  ReproduceOptions o;
  o.repetitions = 2;
  o.n = 40;
  for (const auto& p : reproduce_presets()) {
    const Table t = reproduce(p, o);
    EXPECT_FALSE(t.rows.empty()) << p;
    for (const auto& row : t.rows) EXPECT_EQ(row.size(), t.header.size());
  }
  EXPECT_THROW(reproduce("table9", o), UsageError);
}

}  // namespace
}  // namespace umpc
