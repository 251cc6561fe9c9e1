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

// Plaintext oracles, closed-form error terms and the Monte Carlo harness.
//
// The error of the released statistic against the complete U-statistic
// splits into an incompleteness term (sampling E) and a privacy term (the
// noise divided by |E|). The harness measures both through the protocol's
// noiseless channel.

#ifndef UMPC_EVALUATION_HPP_
#define UMPC_EVALUATION_HPP_

#include <cstdint>
#include <string>

#include "umpc/csv.hpp"
#include "umpc/dataset.hpp"
#include "umpc/fixedpoint.hpp"
#include "umpc/kernels.hpp"
#include "umpc/noise.hpp"
#include "umpc/sampling.hpp"

namespace umpc {

// Brute force over all k-subsets; ScaleError when C(n,k) > 1e8.
double complete_ustat(const Dataset& data, const KernelSpec& kernel);
double incomplete_ustat(const Dataset& data, const Hypergraph& g,
                        const KernelSpec& kernel);

// (N - m) / (4 m (N - 1)); 0 when m = N.
double einc_bound(double big_n, double m);
// 2 (delta_max * delta_f / (eps * m))^2.
double edp_theory(double delta_g_max, double delta_f, double epsilon, double m);
// 2 / (n(n-1)) * (2(n-2) sigma1 + sigma2).
double hoeffding_variance(double sigma1, double sigma2, double n);

struct SigmaEstimates {
  double sigma1 = 0.0;  // variance of the conditional kernel mean
  double sigma2 = 0.0;  // variance of the kernel over pairs
};
// Plug-in estimates from a fixed pairwise dataset.
SigmaEstimates sigma_estimates(const Dataset& data, const KernelSpec& kernel);

struct MseConfig {
  Dataset data;
  KernelSpec kernel;
  SamplerKind sampler = SamplerKind::kBalanced;
  std::uint64_t edges = 0;
  NoiseSpec noise;
  FpConfig fp;
  std::size_t repetitions = 100;
  std::uint64_t seed = 1;
};

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

struct MseReport {
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;
  // Complete U-statistic of the grid values the parties hold.
  double reference = 0.0;
  // (released - reference)^2.
  Estimate mse;
  // (noiseless - reference)^2.
  Estimate e_inc;
  // (released - noiseless)^2.
  Estimate e_dp;
  // (noiseless - reference)^2 + Var(noise | E) / |E|^2: the same expectation
  // as `mse` with the noise integrated out analytically.
  Estimate conditional_mse;
  Estimate edges;
  Estimate delta_g_max;
  double mean_bits = 0.0;
  double mean_rounds = 0.0;
  double einc_bound = 0.0;   // at the target |E|
  double edp_theory = 0.0;   // averaged over the sampled graphs
  double hoeffding = 0.0;    // from plug-in sigma estimates (k = 2 only)
  bool inc_within_bound = false;  // e_inc <= 1.1 * einc_bound
  bool dp_calibrated = false;     // e_dp within 15% of edp_theory
};

// R repetitions resampling (E, noise) on a fixed dataset through run_umpc.
// Repetition r uses the seed Rng::derive(seed, r).
MseReport mse_experiment(const MseConfig& cfg);

// Plaintext E_inc only: mean and SE of (U_E - U_C)^2 over fresh edge sets.
Estimate inc_experiment(const Dataset& data, const KernelSpec& kernel,
                        SamplerKind sampler, std::uint64_t edges,
                        std::size_t repetitions, std::uint64_t seed);

struct ReproduceOptions {
  std::uint64_t seed = 1;
  std::size_t repetitions = 0;  // 0 selects the preset default
  std::uint32_t n = 0;          // 0 selects the preset default
};

std::vector<std::string> reproduce_presets();
// Presets: gini-scaling, kendall-tradeoff, dupl-sampling.
Table reproduce(const std::string& preset, const ReproduceOptions& opt);

}  // namespace umpc

#endif  // UMPC_EVALUATION_HPP_
