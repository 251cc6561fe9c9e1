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

#include "umpc/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "stats.hpp"
#include "umpc/error.hpp"

namespace umpc {
namespace {

const FpConfig kCfg{};

double dlap_pmf(double alpha, std::int64_t z) {
  return (1 - alpha) / (1 + alpha) *
         std::pow(alpha, static_cast<double>(std::llabs(z)));
}

// Support covering all but about 1e-9 of the two-sided geometric mass.
std::int64_t dlap_support(double alpha) {
  return static_cast<std::int64_t>(std::ceil(std::log(1e-9) / std::log(alpha)));
}

NoiseSpec grid_spec(double s_grid, NoiseMode mode) {
  NoiseSpec s;
  s.epsilon = 1.0;
  s.sensitivity = s_grid * kCfg.h();
  s.mode = mode;
  return s;
}

std::int64_t reconstructed_grid(const NoiseOutcome& o) {
  return reconstruct(o.shares).signed_value();
}

TEST(Polya, GeometricWhenROne) {
  Rng rng(1);
  const double beta = 0.6;
  std::vector<std::int64_t> s(100000);
  std::vector<double> d(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = static_cast<std::int64_t>(sample_polya(1.0, beta, rng));
    d[i] = static_cast<double>(s[i]);
  }
  EXPECT_NEAR(stats::mean(d), beta / (1 - beta), 0.02);
  const auto ks = stats::ks_discrete(s, [&](std::int64_t k) {
    return k < 0 ? 0.0 : 1.0 - std::pow(beta, static_cast<double>(k + 1));
  });
  EXPECT_GT(ks.p_value, 0.01);
}

TEST(Polya, TinyBetaIsAlmostAlwaysZero) {
  Rng rng(2);
  int zeros = 0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) zeros += sample_polya(1.0, 1e-9, rng) == 0;
  EXPECT_GE(zeros, draws - 1);
}

TEST(Polya, MeanOfFractionalShape) {
  Rng rng(3);
  double sum = 0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) sum += static_cast<double>(sample_polya(0.5, 0.5, rng));
  EXPECT_NEAR(sum / draws, 0.5, 0.01);
}

TEST(Polya, RejectsBadParameters) {
  Rng rng(4);
  EXPECT_THROW(sample_polya(0.0, 0.5, rng), UsageError);
  EXPECT_THROW(sample_polya(1.0, 1.0, rng), UsageError);
  EXPECT_EQ(sample_polya(1.0, 0.0, rng), 0u);
}

TEST(DlapOracle, VarianceAndSymmetry) {
  Rng rng(5);
  const double a = std::exp(-1.0);
  std::vector<double> v(1000000);
  for (auto& x : v) x = static_cast<double>(dlap_oracle(a, rng));
  const double var = stats::variance(v);
  const double expect = 2 * a / ((1 - a) * (1 - a));
  EXPECT_NEAR(var, expect, 0.03 * expect);
  EXPECT_NEAR(stats::mean(v), 0.0, 3 * std::sqrt(expect / v.size()));
  Rng r2(6);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(dlap_oracle(1e-9, r2), 0);
  EXPECT_THROW(dlap_oracle(1.0, r2), UsageError);
}

TEST(DlapOracle, MatchesPmf) {
  Rng rng(7);
  const double a = std::exp(-0.5);
  std::vector<std::int64_t> s(100000);
  for (auto& x : s) x = dlap_oracle(a, rng);
  const std::int64_t w = dlap_support(a);
  const auto chi = stats::chi_square_integer(
      s, [&](std::int64_t z) { return dlap_pmf(a, z); }, -w, w);
  EXPECT_GT(chi.p_value, 0.01);
}

TEST(Calibration, AlphaAndSigma) {
  NoiseSpec s;
  s.epsilon = 1;
  s.sensitivity = 8 * kCfg.h();
  EXPECT_DOUBLE_EQ(dlap_alpha(s, kCfg), std::exp(-1.0 / 8));
  s.sensitivity = 0;
  EXPECT_EQ(dlap_alpha(s, kCfg), 0.0);
  EXPECT_NEAR(gaussian_sigma(1, 1e-5, 1), std::sqrt(2 * std::log(1.25e5)),
              1e-12);
}

TEST(Spec, Validation) {
  NoiseSpec s;
  EXPECT_NO_THROW(s.validate());
  s.epsilon = 0;
  EXPECT_THROW(s.validate(), UsageError);
  s = {};
  s.mode = NoiseMode::kDgn;
  EXPECT_THROW(s.validate(), UsageError);
  s.delta = 1e-5;
  EXPECT_NO_THROW(s.validate());
  s = {};
  s.mode = NoiseMode::kDlapSubgroup;
  s.honest_fraction = 0;
  EXPECT_THROW(s.validate(), UsageError);
  s.honest_fraction = 0.5;
  s.fail_prob = 1;
  EXPECT_THROW(s.validate(), UsageError);
  EXPECT_EQ(parse_noise_mode(to_string(NoiseMode::kDlapLocal)),
            NoiseMode::kDlapLocal);
  EXPECT_THROW(parse_noise_mode("laplace"), UsageError);
}

TEST(ProtocolDlap, LedgerAndGridIdentity) {
  Rng rng(8);
  const NoiseSpec s = grid_spec(1, NoiseMode::kDlapFull);
  const NoiseOutcome o = protocol_dlap(16, s, kCfg, rng);
  EXPECT_EQ(o.bits, 19200u);
  EXPECT_EQ(o.rounds, 1u);
  EXPECT_EQ(o.shares.size(), 16u);
  EXPECT_EQ(reconstructed_grid(o), o.eta_grid);
}

void expect_dlap_distribution(NoiseMode mode, std::uint32_t n, double s_grid,
                              std::uint64_t seed, NoiseSpec spec = {}) {
  NoiseSpec s = grid_spec(s_grid, mode);
  s.honest_fraction = spec.honest_fraction;
  s.fail_prob = spec.fail_prob;
  Rng rng(seed);
  std::vector<std::int64_t> samples(100000);
  for (auto& x : samples) {
    const NoiseOutcome o = generate_noise(n, s, kCfg, rng);
    x = reconstructed_grid(o);
    ASSERT_EQ(x, o.eta_grid);
  }
  const double a = std::exp(-1.0 / s_grid);
  const std::int64_t w = dlap_support(a);
  const auto chi = stats::chi_square_integer(
      samples, [&](std::int64_t z) { return dlap_pmf(a, z); }, -w, w);
  EXPECT_GT(chi.p_value, 0.01) << to_string(mode) << " s_grid=" << s_grid;
  // Sign-flip symmetry.
  std::vector<double> pos, neg;
  for (auto x : samples) {
    if (x > 0) pos.push_back(static_cast<double>(x));
    if (x < 0) neg.push_back(static_cast<double>(-x));
  }
  EXPECT_GT(stats::ks_two_sample(pos, neg).p_value, 0.01);
}

TEST(ProtocolDlap, MatchesOracleAtUnitScale) {
  expect_dlap_distribution(NoiseMode::kDlapFull, 16, 1, 10);
}

TEST(LocalDlap, MatchesOracleAndCostsNothing) {
  expect_dlap_distribution(NoiseMode::kDlapLocal, 16, 4, 11);
  Rng rng(12);
  const NoiseOutcome o = local_dlap(16, grid_spec(1, NoiseMode::kDlapLocal), kCfg, rng);
  EXPECT_EQ(o.bits, 0u);
  EXPECT_EQ(o.rounds, 0u);
}

TEST(LocalDlap, SameDistributionAsFullProtocol) {
  const NoiseSpec full = grid_spec(3, NoiseMode::kDlapFull);
  const NoiseSpec local = grid_spec(3, NoiseMode::kDlapLocal);
  Rng ra(13), rb(14);
  std::vector<double> a(100000), b(100000);
  for (auto& x : a) x = static_cast<double>(protocol_dlap(8, full, kCfg, ra).eta_grid);
  for (auto& x : b) x = static_cast<double>(local_dlap(8, local, kCfg, rb).eta_grid);
  EXPECT_GT(stats::ks_two_sample(a, b).p_value, 0.01);
}

TEST(LocalDlap, SinglePartyEqualsFullProtocol) {
  // With n = 1 both modes draw the same two Polya variables.
  Rng ra(15), rb(15);
  const NoiseSpec full = grid_spec(2, NoiseMode::kDlapFull);
  const NoiseSpec local = grid_spec(2, NoiseMode::kDlapLocal);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(protocol_dlap(1, full, kCfg, ra).eta_grid,
              local_dlap(1, local, kCfg, rb).eta_grid);
  }
}

TEST(Subgroup, Size) {
  EXPECT_EQ(subgroup_size(0.5, std::ldexp(1.0, -40)), 40u);
  EXPECT_EQ(subgroup_size(1.0, 0.01), 1u);
  EXPECT_EQ(subgroup_size(0.9, 0.01), 2u);
  EXPECT_THROW(subgroup_size(0.0, 0.01), UsageError);
}

TEST(Subgroup, LedgerAndDistribution) {
  NoiseSpec cfg;
  cfg.honest_fraction = 0.5;
  cfg.fail_prob = 0.125;  // z = 3
  NoiseSpec s = grid_spec(2, NoiseMode::kDlapSubgroup);
  s.honest_fraction = cfg.honest_fraction;
  s.fail_prob = cfg.fail_prob;
  Rng rng(16);
  const NoiseOutcome o = subgroup_dlap(10, s, kCfg, rng);
  EXPECT_EQ(o.bits, 2u * 3 * 2 * 40 + 3u * 10 * 40);
  EXPECT_EQ(o.rounds, 2u);
  EXPECT_EQ(o.shares.size(), 10u);
  EXPECT_EQ(reconstructed_grid(o), o.eta_grid);
  expect_dlap_distribution(NoiseMode::kDlapSubgroup, 10, 2, 17, cfg);

  s.fail_prob = std::ldexp(1.0, -40);
  EXPECT_THROW(subgroup_dlap(10, s, kCfg, rng), UsageError);
}

TEST(Ideal, LaplaceAndGaussianVariance) {
  Rng rng(18);
  NoiseSpec s;
  s.mode = NoiseMode::kIdeal;
  s.epsilon = 1;
  s.sensitivity = 1;
  std::vector<double> v(1000000);
  for (auto& x : v) x = static_cast<double>(f_noise_ideal(2, s, kCfg, rng).eta_grid) * kCfg.h();
  EXPECT_NEAR(stats::variance(v), 2.0, 0.06);
  EXPECT_NEAR(noise_variance(s, kCfg), 2.0, 1e-8);

  s.delta = 1e-5;
  for (auto& x : v) x = static_cast<double>(f_noise_ideal(2, s, kCfg, rng).eta_grid) * kCfg.h();
  const double target = 2 * std::log(1.25e5);
  EXPECT_NEAR(target, 23.4, 0.1);
  EXPECT_NEAR(stats::variance(v), target, 0.03 * target);

  s.sensitivity = 0;
  for (int i = 0; i < 100; ++i) EXPECT_EQ(f_noise_ideal(3, s, kCfg, rng).eta_grid, 0);
}

TEST(Ideal, Ledger) {
  Rng rng(19);
  NoiseSpec s;
  s.mode = NoiseMode::kIdeal;
  s.ideal_coeff = 2;
  s.ideal_rounds = 3;
  const NoiseOutcome o = f_noise_ideal(5, s, kCfg, rng);
  EXPECT_EQ(o.bits, 2u * 25 * 40);
  EXPECT_EQ(o.rounds, 3u);
  EXPECT_EQ(reconstructed_grid(o), o.eta_grid);
}

TEST(Ideal, LaplaceShape) {
  Rng rng(20);
  NoiseSpec s;
  s.mode = NoiseMode::kIdeal;
  s.sensitivity = 3;
  s.epsilon = 1.5;
  std::vector<double> v(100000);
  for (auto& x : v) x = static_cast<double>(f_noise_ideal(1, s, kCfg, rng).eta_grid) * kCfg.h();
  const double b = 2.0;
  auto cdf = [&](double x) {
    return x < 0 ? 0.5 * std::exp(x / b) : 1 - 0.5 * std::exp(-x / b);
  };
  EXPECT_GT(stats::ks_one_sample(v, cdf).p_value, 0.01);
}

TEST(GenerateNoise, DisabledIsFreeZero) {
  Rng rng(21);
  NoiseSpec s;
  s.epsilon = std::numeric_limits<double>::infinity();
  const NoiseOutcome o = generate_noise(7, s, kCfg, rng);
  EXPECT_EQ(o.eta_grid, 0);
  EXPECT_EQ(o.bits, 0u);
  EXPECT_EQ(o.rounds, 0u);
  EXPECT_EQ(reconstruct(o.shares).raw(), 0u);
  EXPECT_EQ(noise_variance(s, kCfg), 0.0);
}

TEST(GenerateNoise, WrapCheckInDebugMode) {
  Rng rng(22);
  NoiseSpec s;
  s.mode = NoiseMode::kIdeal;
  s.sensitivity = std::ldexp(1.0, 20);
  s.epsilon = 1e-3;
  s.debug_checks = true;
  EXPECT_THROW(
      for (int i = 0; i < 20; ++i) generate_noise(2, s, kCfg, rng),
      WrapRiskError);
}

TEST(FMod, Examples) {
  Rng rng(23);
  const auto parties = all_parties(3);
  auto shared = [&](std::uint64_t raw) {
    return share(FpValue(raw, kCfg), parties, rng);
  };
  EXPECT_EQ(reconstruct(f_mod_ideal(shared(10), 3, rng)).raw(), 1u);
  EXPECT_EQ(reconstruct(f_mod_ideal(shared(0), 3, rng)).raw(), 0u);
  const std::uint64_t big = kCfg.mask() - 5;
  EXPECT_EQ(reconstruct(f_mod_ideal(shared(big), std::uint64_t{1} << 40, rng)).raw(), big);
  // The signed reading -1 reduces to m - 1.
  EXPECT_EQ(reconstruct(f_mod_ideal(shared(kCfg.mask()), 7, rng)).raw(), 6u);
  EXPECT_THROW(f_mod_ideal(shared(1), 0, rng), UsageError);
}

TEST(FTrunc, RoundsHalfAway) {
  Rng rng(24);
  const auto parties = all_parties(2);
  auto t = [&](std::int64_t v, unsigned b) {
    return reconstruct(f_trunc_ideal(
                           share(FpValue(from_signed(v, kCfg), kCfg), parties, rng),
                           b, rng))
        .signed_value();
  };
  EXPECT_EQ(t(12, 2), 3);
  EXPECT_EQ(t(10, 2), 3);   // 2.5 -> 3
  EXPECT_EQ(t(-10, 2), -3);
  EXPECT_EQ(t(9, 2), 2);
  EXPECT_EQ(t(5, 0), 5);
}

TEST(BeaverMul, ProductAndCost) {
  Rng rng(25);
  std::mt19937_64 g(26);
  const auto parties = all_parties(4);
  for (int i = 0; i < 200; ++i) {
    const FpValue x(g(), kCfg), y(g(), kCfg);
    std::uint64_t bits = 0;
    const Sharing p = beaver_mul(share(x, parties, rng), share(y, parties, rng),
                                 rng, bits);
    EXPECT_EQ(reconstruct(p).raw(), (x.raw() * y.raw()) & kCfg.mask());
    EXPECT_EQ(bits, 2u * 4 * 3 * 40);
  }
}

TEST(Dgn, ScaleBits) {
  EXPECT_EQ(dgn_scale_bits(kCfg, 1.0), 14u);
  // Large sigma leaves fewer bits; enormous sigma cannot fit.
  EXPECT_LT(dgn_scale_bits(kCfg, 1000.0), 14u);
  EXPECT_THROW(dgn_scale_bits(kCfg, 1e9), RangeError);
  EXPECT_THROW(dgn_scale_bits(kCfg, 0.0), UsageError);
}

TEST(Dgn, RequiresHeadroom) {
  Rng rng(27);
  EXPECT_THROW(dgn_polar(2, FpConfig{28, 14}, rng), RangeError);
}

TEST(Dgn, LedgerMatchesClosedForm) {
  Rng rng(28);
  for (std::uint32_t n : {1u, 3u, 8u}) {
    DgnOptions opt;
    opt.sigma = 2.0;
    opt.mod_cost.coeff = 1.5;
    opt.mod_cost.rounds = 2;
    opt.trunc_cost.rounds = 3;
    for (int i = 0; i < 30; ++i) {
      const DgnOutcome d = dgn_polar(n, kCfg, rng, opt);
      EXPECT_EQ(d.bits, d.attempts * dgn_attempt_bits(n, kCfg, opt) +
                            dgn_final_bits(n, kCfg, opt));
      EXPECT_EQ(d.rounds, d.attempts * dgn_attempt_rounds(opt) +
                              dgn_final_rounds(opt));
      EXPECT_EQ(reconstruct(d.z1).signed_value(), d.z1_grid);
      EXPECT_EQ(reconstruct(d.z2).signed_value(), d.z2_grid);
      EXPECT_GT(d.u, 0.0);
      EXPECT_LT(d.u, 1.0);
    }
  }
}

TEST(Dgn, AcceptanceRateAndNormality) {
  Rng rng(29);
  DgnOptions opt;
  std::uint64_t attempts = 0;
  std::vector<double> z1, z2;
  while (attempts < 100000) {
    const DgnOutcome d = dgn_polar(1, kCfg, rng, opt);
    attempts += d.attempts;
    z1.push_back(static_cast<double>(d.z1_grid) * kCfg.h());
    z2.push_back(static_cast<double>(d.z2_grid) * kCfg.h());
  }
  const double rate = static_cast<double>(z1.size()) / static_cast<double>(attempts);
  EXPECT_NEAR(rate, std::numbers::pi / 4, 0.01);
  EXPECT_GT(stats::anderson_darling_normal(z1, 0, 1).p_value, 0.01);
  EXPECT_GT(stats::anderson_darling_normal(z2, 0, 1).p_value, 0.01);
}

TEST(Dgn, ScaledOutputThroughGenerateNoise) {
  Rng rng(30);
  NoiseSpec s;
  s.mode = NoiseMode::kDgn;
  s.delta = 1e-5;
  s.sensitivity = 0.5;
  const double sigma = gaussian_sigma(1, 1e-5, 0.5);
  std::vector<double> v(20000);
  for (auto& x : v) x = static_cast<double>(generate_noise(4, s, kCfg, rng).eta_grid) * kCfg.h();
  EXPECT_GT(stats::anderson_darling_normal(v, 0, sigma).p_value, 0.01);
  EXPECT_NEAR(noise_variance(s, kCfg), sigma * sigma, 1e-6);
}

TEST(Dgn, AttemptBudget) {
  Rng rng(31);
  DgnOptions opt;
  opt.max_attempts = 0;
  EXPECT_THROW(dgn_polar(2, kCfg, rng, opt), UsageError);
  // One attempt fails with probability 1 - pi/4; some seed must hit it.
  opt.max_attempts = 1;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    try {
      dgn_polar(2, kCfg, rng, opt);
    } catch (const SamplingFailure&) {
      ++failures;
    }
  }
  EXPECT_GT(failures, 10);
  EXPECT_LT(failures, 80);
}

}  // namespace
}  // namespace umpc
