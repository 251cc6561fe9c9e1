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

// Distributed generation of shared DP noise.
//
// Every generator returns an (n,n) sharing of an integer noise value on the
// fixed-point grid, the plaintext value (debug channel) and the exact number
// of bits and rounds the simulated parties exchanged.
//
// Discrete Laplace noise is built from Polya (negative binomial) draws: if
// each of n parties draws a_i, b_i ~ NB(1/n, alpha), then sum(a_i - b_i) is
// two-sided geometric with P(z) proportional to alpha^|z|. The sensitivity is
// given in real units and converted to grid units, alpha = exp(-eps * h / s).

#ifndef UMPC_NOISE_HPP_
#define UMPC_NOISE_HPP_

#include <cstdint>
#include <limits>
#include <string>

#include "umpc/fixedpoint.hpp"
#include "umpc/rng.hpp"
#include "umpc/secretsharing.hpp"

namespace umpc {

enum class NoiseMode { kIdeal, kDlapFull, kDlapLocal, kDlapSubgroup, kDgn };

NoiseMode parse_noise_mode(const std::string& name);
std::string to_string(NoiseMode mode);

// Cost of an ideal sub-functionality: coeff * n * (n-1) * ell bits.
struct SubCost {
  double coeff = 1.0;
  std::uint32_t rounds = 1;
  std::uint64_t bits(std::uint64_t n, unsigned ell) const;
};

struct NoiseSpec {
  double epsilon = 1.0;  // +inf disables noise
  double delta = 0.0;
  double sensitivity = 1.0;  // real units
  NoiseMode mode = NoiseMode::kDlapFull;

  // Subgroup delegation.
  double honest_fraction = 0.5;
  double fail_prob = 0x1p-40;

  // Ideal mode charges ideal_coeff * n^2 * ell bits in ideal_rounds rounds.
  double ideal_coeff = 1.0;
  std::uint32_t ideal_rounds = 1;

  // Costs of the ideal modular-reduction and truncation steps used by kDgn.
  SubCost mod_cost{};
  SubCost trunc_cost{};

  // Enables the plaintext wrap-around check on generated noise.
  bool debug_checks = false;

  bool disabled() const { return epsilon == std::numeric_limits<double>::infinity(); }
  // Throws UsageError on invalid parameters.
  void validate() const;
};

struct NoiseOutcome {
  Sharing shares;
  std::int64_t eta_grid = 0;
  std::uint64_t bits = 0;
  std::uint32_t rounds = 0;
};

// NB(r, beta) through the Gamma-Poisson mixture.
std::uint64_t sample_polya(double r, double beta, Rng& rng);

// Two-sided geometric: difference of two geometric(1 - alpha) draws.
std::int64_t dlap_oracle(double alpha, Rng& rng);

// exp(-eps / s_grid) with s_grid = s / h; 0 when s = 0.
double dlap_alpha(const NoiseSpec& spec, const FpConfig& cfg);

// Standard deviation of the Gaussian mechanism in real units.
double gaussian_sigma(double epsilon, double delta, double sensitivity);

// Variance in real units of the noise generate_noise() draws for `spec`.
// Exact for the discrete Laplace modes; the continuous modes add the h^2/12
// rounding term.
double noise_variance(const NoiseSpec& spec, const FpConfig& cfg);

// Every party shares a_i and b_i with all others: 2n(n-1)ell bits, 1 round.
NoiseOutcome protocol_dlap(std::uint32_t n, const NoiseSpec& spec,
                           const FpConfig& cfg, Rng& rng);

// Party i keeps a_i - b_i as its share: no communication.
NoiseOutcome local_dlap(std::uint32_t n, const NoiseSpec& spec,
                        const FpConfig& cfg, Rng& rng);

// ceil(ln(fail_prob) / ln(1 - honest_fraction)), at least 1.
std::uint32_t subgroup_size(double honest_fraction, double fail_prob);

// A random subgroup of z parties runs the full protocol among themselves and
// then reshares its total to all n parties: 2z(z-1)ell + z*n*ell bits,
// 2 rounds.
NoiseOutcome subgroup_dlap(std::uint32_t n, const NoiseSpec& spec,
                           const FpConfig& cfg, Rng& rng);

// Trusted reference: continuous Laplace(s/eps) when delta = 0, Gaussian
// mechanism otherwise, rounded to the grid and (n,n)-shared.
NoiseOutcome f_noise_ideal(std::uint32_t n, const NoiseSpec& spec,
                           const FpConfig& cfg, Rng& rng);

// Mode dispatch. A disabled spec yields a zero sharing at zero cost.
NoiseOutcome generate_noise(std::uint32_t n, const NoiseSpec& spec,
                            const FpConfig& cfg, Rng& rng);

// Ideal modular reduction: reconstructs, reduces the signed reading into
// {0, ..., modulus-1}, reshares to the same parties.
Sharing f_mod_ideal(const Sharing& s, std::uint64_t modulus, Rng& rng);

// Ideal truncation: divides the signed reading by 2^bits, rounding half
// away from zero, and reshares.
Sharing f_trunc_ideal(const Sharing& s, unsigned bits, Rng& rng);

// Product of two shared ring integers using a dealer-provided triple.
// Opens two masked values; adds 2n(n-1)ell to `bits`.
Sharing beaver_mul(const Sharing& x, const Sharing& y, Rng& rng,
                   std::uint64_t& bits);

struct DgnOptions {
  double sigma = 1.0;  // output scale in real units
  std::uint32_t max_attempts = 64;
  SubCost mod_cost{};
  SubCost trunc_cost{};
};

struct DgnOutcome {
  Sharing z1;
  Sharing z2;
  std::int64_t z1_grid = 0;  // debug channel
  std::int64_t z2_grid = 0;
  double u = 0.0;  // accepted q1^2 + q2^2
  std::uint32_t attempts = 0;
  unsigned scale_bits = 0;  // fractional bits of the public multiplier
  std::uint64_t bits = 0;
  std::uint32_t rounds = 0;
};

// Closed-form cost of one rejected or accepted attempt and of the final
// scaling step, for ledger checks.
std::uint64_t dgn_attempt_bits(std::uint32_t n, const FpConfig& cfg,
                               const DgnOptions& opt);
std::uint32_t dgn_attempt_rounds(const DgnOptions& opt);
std::uint64_t dgn_final_bits(std::uint32_t n, const FpConfig& cfg,
                             const DgnOptions& opt);
std::uint32_t dgn_final_rounds(const DgnOptions& opt);

// Largest multiplier precision keeping the scaled product clear of
// wrap-around; throws RangeError when none exists.
unsigned dgn_scale_bits(const FpConfig& cfg, double sigma);

// Polar Box-Muller over shares. Each attempt draws shared q in the grid of
// [0,1) and a shared sign bit for two coordinates via f_mod_ideal, opens
// u = q1^2 + q2^2 and retries unless 0 < u < 1. The accepted pair is
// sign * q * sigma * sqrt(-2 ln u / u). Throws SamplingFailure after
// max_attempts rejections.
DgnOutcome dgn_polar(std::uint32_t n, const FpConfig& cfg, Rng& rng,
                     const DgnOptions& opt = {});

}  // namespace umpc

#endif  // UMPC_NOISE_HPP_
