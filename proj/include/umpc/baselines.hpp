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

// Local-DP baseline: every party discretizes its value into one of t bins,
// randomizes the bin, and the server averages a debiased kernel matrix over
// all pairs. Also analytic cost and error models for the compared protocols.

#ifndef UMPC_BASELINES_HPP_
#define UMPC_BASELINES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "umpc/dataset.hpp"
#include "umpc/kernels.hpp"
#include "umpc/rng.hpp"

namespace umpc {

// Minimum flip probability for epsilon-LDP: ((e^eps - 1)/t + 1)^-1.
double bell_beta_exact(double epsilon, std::uint32_t t);
// Looser (eps/t + 1)^-1.
double bell_beta_relaxed(double epsilon, std::uint32_t t);

struct BellConfig {
  std::uint32_t t = 64;
  double beta = 0.0;
  double epsilon = 1.0;

  // beta from the exact constraint.
  static BellConfig from_epsilon(std::uint32_t t, double epsilon);
  void validate() const;
};

// Bins are 1-based. discretize(x) = clamp(ceil(x*t), 1, t), which keeps
// every x within half a bin of representative(bin) = (bin - 1/2)/t.
std::uint32_t discretize(double x, std::uint32_t t);
double representative(std::uint32_t bin, std::uint32_t t);

// Keeps the bin with probability 1 - beta, otherwise uniform on [t].
std::uint32_t bell_randomizer(std::uint32_t bin, std::uint32_t t, double beta,
                              Rng& rng);
// P[R(x) = y] = beta/t + (1 - beta) [x = y].
double bell_transition(std::uint32_t x, std::uint32_t y, std::uint32_t t,
                       double beta);

// Row-major t x t matrix, 0-based storage for 1-based bins.
struct Matrix {
  std::uint32_t t = 0;
  std::vector<double> a;
  double operator()(std::uint32_t i, std::uint32_t j) const {
    return a[static_cast<std::size_t>(i - 1) * t + (j - 1)];
  }
  double& at(std::uint32_t i, std::uint32_t j) {
    return a[static_cast<std::size_t>(i - 1) * t + (j - 1)];
  }
};

// A(i, j) = f(representative(i), representative(j)) for a scalar kernel.
Matrix kernel_matrix(const KernelSpec& kernel, std::uint32_t t);

// (1-beta)^-2 (e_i - b)^T A (e_j - b) with b = (beta/t) * ones.
double bell_fhat(std::uint32_t i, std::uint32_t j, const Matrix& a,
                 double beta);
Matrix bell_fhat_matrix(const Matrix& a, double beta);

struct BellResult {
  double estimate = 0.0;
  // Complete U-statistic over the un-randomized bin representatives.
  double discretized = 0.0;
  double beta = 0.0;
  std::uint32_t bins = 0;  // t, or t^2 for the joint-bin variant
};

// Scalar kernels with components = 1 run directly; kendall runs on t^2
// joint bins (t^2 <= 1024). Anything else raises UnsupportedKernel.
BellResult bell_estimate(const Dataset& data, const KernelSpec& kernel,
                         std::uint32_t t, double epsilon, Rng& rng);
BellResult bell_estimate(const Dataset& data, const KernelSpec& kernel,
                         const BellConfig& cfg, Rng& rng);

// Upper bound on the estimator's MSE against the discretized statistic for
// kernels with values in [0,1].
double bell_mse_bound(std::size_t n, double beta);

enum class CostProtocol { kBell, kGhazi, kGhaziSM, kUmpcDis, kUmpcHF };

std::string to_string(CostProtocol p);
std::vector<CostProtocol> all_cost_protocols();

// Inputs to the asymptotic cost rows. All constants of proportionality are
// 1; logarithms are base 2.
struct CostParams {
  double n = 100;
  double t = 64;
  double epsilon = 1.0;
  double ell = 40;
  double edges = 1000;
  double lipschitz = 1.0;
  double comm_f = 240;  // C^C_f, bits per kernel evaluation
  double ops_f = 120;   // C^T_f, operations per kernel evaluation
  double c_eta = 1.0;
};

struct CostReport {
  std::string protocol;
  double bits = 0;
  double party_ops = 0;
  double server_ops = 0;
  double mse = 0;
};

CostReport cost_eval(CostProtocol p, const CostParams& params);

}  // namespace umpc

#endif  // UMPC_BASELINES_HPP_
