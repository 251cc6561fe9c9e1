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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "umpc/error.hpp"

namespace umpc {

namespace {

std::uint64_t pair_bits(std::uint64_t n, unsigned ell) {
  return n * (n - 1) * ell;
}

void check_wrap(std::int64_t eta_grid, const NoiseSpec& spec,
                const FpConfig& cfg) {
  if (!spec.debug_checks) return;
  const std::int64_t bound = std::int64_t{1} << (cfg.ell - 2);
  if (eta_grid >= bound || eta_grid <= -bound) {
    throw WrapRiskError("noise magnitude " + std::to_string(eta_grid) +
                        " grid units reaches 2^" + std::to_string(cfg.ell - 2));
  }
}

Sharing zero_sharing(std::uint32_t n, const FpConfig& cfg) {
  return Sharing(all_parties(n), std::vector<std::uint64_t>(n, 0), cfg);
}

void check_parties(std::uint32_t n) {
  if (n == 0) throw UsageError("noise: zero parties");
}

// Signed grid value for a real noise draw; rejects values no 64-bit grid
// integer can hold.
std::int64_t to_grid(double eta, const FpConfig& cfg) {
  const double g = eta / cfg.h();
  if (!std::isfinite(g) || std::fabs(g) >= 0x1p62) {
    throw RangeError("noise draw " + std::to_string(eta) +
                     " does not fit the grid");
  }
  return std::llround(g);
}

// Every party in `members` draws a_i, b_i ~ NB(1/|members|, alpha) and
// shares both among the members. Returns the members' shares of the total
// and the plaintext total.
std::int64_t dlap_among(std::span<const PartyId> members, double alpha,
                        const FpConfig& cfg, Rng& rng,
                        std::vector<std::uint64_t>& member_shares) {
  const std::size_t z = members.size();
  const double r = 1.0 / static_cast<double>(z);
  member_shares.assign(z, 0);
  std::vector<std::uint64_t> tmp(z);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < z; ++i) {
    const auto a = static_cast<std::int64_t>(sample_polya(r, alpha, rng));
    const auto b = static_cast<std::int64_t>(sample_polya(r, alpha, rng));
    total += a - b;
    split_raw(from_signed(a, cfg), cfg, rng, tmp);
    for (std::size_t j = 0; j < z; ++j) member_shares[j] += tmp[j];
    split_raw(from_signed(b, cfg), cfg, rng, tmp);
    for (std::size_t j = 0; j < z; ++j) member_shares[j] -= tmp[j];
  }
  for (auto& s : member_shares) s &= cfg.mask();
  return total;
}

std::int64_t signed_total(const Sharing& s) {
  return reconstruct(s).signed_value();
}

}  // namespace

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "ideal") return NoiseMode::kIdeal;
  if (name == "dlap_full") return NoiseMode::kDlapFull;
  if (name == "dlap_local") return NoiseMode::kDlapLocal;
  if (name == "dlap_subgroup") return NoiseMode::kDlapSubgroup;
  if (name == "dgn") return NoiseMode::kDgn;
  throw UsageError("unknown noise mode '" + name +
                   "' (expected ideal|dlap_full|dlap_local|dlap_subgroup|dgn)");
}

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kIdeal: return "ideal";
    case NoiseMode::kDlapFull: return "dlap_full";
    case NoiseMode::kDlapLocal: return "dlap_local";
    case NoiseMode::kDlapSubgroup: return "dlap_subgroup";
    case NoiseMode::kDgn: return "dgn";
  }
  return "unknown";
}

std::uint64_t SubCost::bits(std::uint64_t n, unsigned ell) const {
  return static_cast<std::uint64_t>(
      std::llround(coeff * static_cast<double>(pair_bits(n, ell))));
}

void NoiseSpec::validate() const {
  if (!(epsilon > 0.0)) throw UsageError("noise: epsilon must be > 0");
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw UsageError("noise: delta must lie in [0, 1)");
  }
  if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) {
    throw UsageError("noise: sensitivity must be finite and >= 0");
  }
  if (mode == NoiseMode::kDgn && !(delta > 0.0) && !disabled()) {
    throw UsageError("noise: dgn mode requires delta > 0");
  }
  if (mode == NoiseMode::kDlapSubgroup) {
    if (!(honest_fraction > 0.0 && honest_fraction <= 1.0)) {
      throw UsageError("noise: honest fraction must lie in (0, 1]");
    }
    if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
      throw UsageError("noise: failure probability must lie in (0, 1)");
    }
  }
  if (!(ideal_coeff >= 0.0) || !(mod_cost.coeff >= 0.0) ||
      !(trunc_cost.coeff >= 0.0)) {
    throw UsageError("noise: cost coefficients must be >= 0");
  }
}

std::uint64_t sample_polya(double r, double beta, Rng& rng) {
  if (!(r > 0.0) || !(beta >= 0.0 && beta < 1.0)) {
    throw UsageError("sample_polya: need r > 0 and beta in [0, 1)");
  }
  if (beta == 0.0) return 0;
  std::gamma_distribution<double> gamma(r, beta / (1.0 - beta));
  const double lambda = gamma(rng);
  if (!(lambda > 0.0)) return 0;
  std::poisson_distribution<std::uint64_t> poisson(lambda);
  return poisson(rng);
}

std::int64_t dlap_oracle(double alpha, Rng& rng) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw UsageError("dlap_oracle: alpha must lie in [0, 1)");
  }
  if (alpha == 0.0) return 0;
  std::geometric_distribution<std::int64_t> geo(1.0 - alpha);
  const std::int64_t a = geo(rng);
  return a - geo(rng);
}

double dlap_alpha(const NoiseSpec& spec, const FpConfig& cfg) {
  if (spec.sensitivity == 0.0 || spec.disabled()) return 0.0;
  const double s_grid = spec.sensitivity / cfg.h();
  return std::exp(-spec.epsilon / s_grid);
}

double gaussian_sigma(double epsilon, double delta, double sensitivity) {
  return std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity / epsilon;
}

double noise_variance(const NoiseSpec& spec, const FpConfig& cfg) {
  if (spec.disabled() || spec.sensitivity == 0.0) return 0.0;
  const double h2 = cfg.h() * cfg.h();
  switch (spec.mode) {
    case NoiseMode::kDlapFull:
    case NoiseMode::kDlapLocal:
    case NoiseMode::kDlapSubgroup: {
      const double a = dlap_alpha(spec, cfg);
      return 2.0 * a / ((1.0 - a) * (1.0 - a)) * h2;
    }
    case NoiseMode::kIdeal:
      if (spec.delta == 0.0) {
        const double b = spec.sensitivity / spec.epsilon;
        return 2.0 * b * b + h2 / 12.0;
      }
      [[fallthrough]];
    case NoiseMode::kDgn: {
      const double s = gaussian_sigma(spec.epsilon, spec.delta, spec.sensitivity);
      return s * s + h2 / 12.0;
    }
  }
  return 0.0;
}

NoiseOutcome protocol_dlap(std::uint32_t n, const NoiseSpec& spec,
                           const FpConfig& cfg, Rng& rng) {
  check_parties(n);
  spec.validate();
  const auto parties = all_parties(n);
  std::vector<std::uint64_t> shares;
  NoiseOutcome out;
  out.eta_grid = dlap_among(parties, dlap_alpha(spec, cfg), cfg, rng, shares);
  check_wrap(out.eta_grid, spec, cfg);
  out.shares = Sharing(parties, std::move(shares), cfg);
  out.bits = 2 * pair_bits(n, cfg.ell);
  out.rounds = 1;
  return out;
}

NoiseOutcome local_dlap(std::uint32_t n, const NoiseSpec& spec,
                        const FpConfig& cfg, Rng& rng) {
  check_parties(n);
  spec.validate();
  const double alpha = dlap_alpha(spec, cfg);
  const double r = 1.0 / n;
  std::vector<std::uint64_t> shares(n);
  NoiseOutcome out;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto a = static_cast<std::int64_t>(sample_polya(r, alpha, rng));
    const auto b = static_cast<std::int64_t>(sample_polya(r, alpha, rng));
    out.eta_grid += a - b;
    shares[i] = from_signed(a - b, cfg);
  }
  check_wrap(out.eta_grid, spec, cfg);
  out.shares = Sharing(all_parties(n), std::move(shares), cfg);
  return out;
}

std::uint32_t subgroup_size(double honest_fraction, double fail_prob) {
  if (!(honest_fraction > 0.0 && honest_fraction <= 1.0) ||
      !(fail_prob > 0.0 && fail_prob < 1.0)) {
    throw UsageError("subgroup_size: need f_H in (0,1] and fail_prob in (0,1)");
  }
  if (honest_fraction == 1.0) return 1;
  // The small slack keeps exact ratios such as 40 ln2 / ln2 from rounding up.
  const double z =
      std::ceil(std::log(fail_prob) / std::log1p(-honest_fraction) - 1e-9);
  return static_cast<std::uint32_t>(std::max(1.0, z));
}

NoiseOutcome subgroup_dlap(std::uint32_t n, const NoiseSpec& spec,
                           const FpConfig& cfg, Rng& rng) {
  check_parties(n);
  spec.validate();
  const std::uint32_t z = subgroup_size(spec.honest_fraction, spec.fail_prob);
  if (z > n) {
    throw UsageError("subgroup of " + std::to_string(z) +
                     " parties exceeds the " + std::to_string(n) + " available");
  }
  std::vector<PartyId> pool = all_parties(n);
  for (std::uint32_t i = 0; i < z; ++i) {
    std::swap(pool[i], pool[i + rng.uniform_below(n - i)]);
  }
  std::vector<PartyId> members(pool.begin(), pool.begin() + z);
  std::sort(members.begin(), members.end());

  std::vector<std::uint64_t> member_shares;
  NoiseOutcome out;
  out.eta_grid =
      dlap_among(members, dlap_alpha(spec, cfg), cfg, rng, member_shares);
  check_wrap(out.eta_grid, spec, cfg);

  std::vector<std::uint64_t> shares(n, 0), tmp(n);
  for (std::uint64_t ms : member_shares) {
    split_raw(ms, cfg, rng, tmp);
    for (std::uint32_t j = 0; j < n; ++j) shares[j] += tmp[j];
  }
  for (auto& s : shares) s &= cfg.mask();
  out.shares = Sharing(all_parties(n), std::move(shares), cfg);
  out.bits = 2 * pair_bits(z, cfg.ell) + std::uint64_t{z} * n * cfg.ell;
  out.rounds = 2;
  return out;
}

NoiseOutcome f_noise_ideal(std::uint32_t n, const NoiseSpec& spec,
                           const FpConfig& cfg, Rng& rng) {
  check_parties(n);
  spec.validate();
  NoiseOutcome out;
  double eta = 0.0;
  if (spec.sensitivity > 0.0) {
    if (spec.delta == 0.0) {
      const double b = spec.sensitivity / spec.epsilon;
      const double u = rng.uniform_open01() - 0.5;
      if (u != 0.0) eta = -b * std::copysign(std::log1p(-2.0 * std::fabs(u)), u);
    } else {
      std::normal_distribution<double> normal(
          0.0, gaussian_sigma(spec.epsilon, spec.delta, spec.sensitivity));
      eta = normal(rng);
    }
  }
  out.eta_grid = to_grid(eta, cfg);
  check_wrap(out.eta_grid, spec, cfg);
  std::vector<std::uint64_t> shares(n);
  split_raw(from_signed(out.eta_grid, cfg), cfg, rng, shares);
  out.shares = Sharing(all_parties(n), std::move(shares), cfg);
  out.bits = static_cast<std::uint64_t>(std::llround(
      spec.ideal_coeff * static_cast<double>(n) * n * cfg.ell));
  out.rounds = spec.ideal_rounds;
  return out;
}

NoiseOutcome generate_noise(std::uint32_t n, const NoiseSpec& spec,
                            const FpConfig& cfg, Rng& rng) {
  check_parties(n);
  if (spec.disabled()) {
    NoiseOutcome out;
    out.shares = zero_sharing(n, cfg);
    return out;
  }
  switch (spec.mode) {
    case NoiseMode::kIdeal: return f_noise_ideal(n, spec, cfg, rng);
    case NoiseMode::kDlapFull: return protocol_dlap(n, spec, cfg, rng);
    case NoiseMode::kDlapLocal: return local_dlap(n, spec, cfg, rng);
    case NoiseMode::kDlapSubgroup: return subgroup_dlap(n, spec, cfg, rng);
    case NoiseMode::kDgn: {
      spec.validate();
      NoiseOutcome out;
      if (spec.sensitivity == 0.0) {
        out.shares = zero_sharing(n, cfg);
        return out;
      }
      DgnOptions opt;
      opt.sigma = gaussian_sigma(spec.epsilon, spec.delta, spec.sensitivity);
      opt.mod_cost = spec.mod_cost;
      opt.trunc_cost = spec.trunc_cost;
      DgnOutcome d = dgn_polar(n, cfg, rng, opt);
      check_wrap(d.z1_grid, spec, cfg);
      out.shares = std::move(d.z1);
      out.eta_grid = d.z1_grid;
      out.bits = d.bits;
      out.rounds = d.rounds;
      return out;
    }
  }
  throw UsageError("noise: unknown mode");
}

Sharing f_mod_ideal(const Sharing& s, std::uint64_t modulus, Rng& rng) {
  if (modulus == 0) throw UsageError("f_mod_ideal: modulus 0");
  const FpConfig& cfg = s.config();
  const FpValue x = reconstruct(s);
  std::uint64_t y;
  if (modulus > cfg.mask()) {
    // m = 2^ell or larger: reduction of the ring residue is the identity.
    y = x.raw();
  } else {
    const auto m = static_cast<__int128>(modulus);
    __int128 r = static_cast<__int128>(x.signed_value()) % m;
    if (r < 0) r += m;
    y = static_cast<std::uint64_t>(r);
  }
  std::vector<std::uint64_t> shares(s.size());
  split_raw(y, cfg, rng, shares);
  return Sharing(s.parties(), std::move(shares), cfg);
}

Sharing f_trunc_ideal(const Sharing& s, unsigned bits, Rng& rng) {
  const FpConfig& cfg = s.config();
  const std::int64_t v = reconstruct(s).signed_value();
  std::int64_t q = v;
  if (bits > 0) {
    const std::int64_t mag = v < 0 ? -v : v;
    const std::int64_t half = std::int64_t{1} << (bits - 1);
    q = (mag + half) >> bits;
    if (v < 0) q = -q;
  }
  std::vector<std::uint64_t> shares(s.size());
  split_raw(from_signed(q, cfg), cfg, rng, shares);
  return Sharing(s.parties(), std::move(shares), cfg);
}

namespace {

Sharing deal(std::uint64_t raw, const Sharing& like, Rng& rng) {
  std::vector<std::uint64_t> shares(like.size());
  split_raw(raw, like.config(), rng, shares);
  return Sharing(like.parties(), std::move(shares), like.config());
}

std::uint64_t open(const Sharing& s, std::uint64_t& bits) {
  bits += pair_bits(s.size(), s.config().ell);
  return reconstruct(s).raw();
}

// q^2 from a dealer square pair (a, a^2): one opening of q - a.
Sharing square(const Sharing& q, Rng& rng, std::uint64_t& bits) {
  const FpConfig& cfg = q.config();
  const std::uint64_t a = rng.next_u64() & cfg.mask();
  const Sharing sa = deal(a, q, rng);
  const Sharing sa2 = deal(a * a, q, rng);
  const std::uint64_t d = open(sub_local(q, sa), bits);
  // q^2 = a^2 + 2ad + d^2
  Sharing out = add_local(sa2, scale_local(sa, 2 * d));
  return add_public(out, d * d);
}

}  // namespace

Sharing beaver_mul(const Sharing& x, const Sharing& y, Rng& rng,
                   std::uint64_t& bits) {
  const FpConfig& cfg = x.config();
  const std::uint64_t a = rng.next_u64() & cfg.mask();
  const std::uint64_t b = rng.next_u64() & cfg.mask();
  const Sharing sa = deal(a, x, rng);
  const Sharing sb = deal(b, x, rng);
  const Sharing sc = deal(a * b, x, rng);
  const std::uint64_t d = open(sub_local(x, sa), bits);
  const std::uint64_t e = open(sub_local(y, sb), bits);
  // xy = c + d*b + e*a + d*e
  Sharing out = add_local(sc, add_local(scale_local(sb, d), scale_local(sa, e)));
  return add_public(out, d * e);
}

std::uint64_t dgn_attempt_bits(std::uint32_t n, const FpConfig& cfg,
                               const DgnOptions& opt) {
  // Shares of r and s for two coordinates, four reductions, two masked
  // openings for the squares and the opening of u.
  return 4 * pair_bits(n, cfg.ell) + 4 * opt.mod_cost.bits(n, cfg.ell) +
         3 * pair_bits(n, cfg.ell);
}

std::uint32_t dgn_attempt_rounds(const DgnOptions& opt) {
  return 1 + opt.mod_cost.rounds + 2;
}

std::uint64_t dgn_final_bits(std::uint32_t n, const FpConfig& cfg,
                             const DgnOptions& opt) {
  // Two sign products with two openings each, then two truncations.
  return 4 * pair_bits(n, cfg.ell) + 2 * opt.trunc_cost.bits(n, cfg.ell);
}

std::uint32_t dgn_final_rounds(const DgnOptions& opt) {
  return 1 + opt.trunc_cost.rounds;
}

unsigned dgn_scale_bits(const FpConfig& cfg, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw UsageError("dgn: sigma must be positive and finite");
  }
  // |q| <= sqrt(u) bounds |q| * sqrt(-2 ln u / u) by sqrt(-2 ln u), largest
  // at the smallest accepted u = 2^-2c.
  const double worst = sigma * std::sqrt(4.0 * cfg.c * std::log(2.0) + 1e-12);
  const double room = static_cast<double>(cfg.ell) - 2.0 - cfg.c -
                      std::log2(std::max(worst, 1e-300));
  if (room < 0.0) {
    throw RangeError("dgn: sigma " + std::to_string(sigma) +
                     " overflows the ring at " + describe(cfg));
  }
  return std::min<unsigned>(cfg.c, static_cast<unsigned>(std::floor(room)));
}

DgnOutcome dgn_polar(std::uint32_t n, const FpConfig& cfg, Rng& rng,
                     const DgnOptions& opt) {
  check_parties(n);
  if (2 * cfg.c + 1 >= cfg.ell) {
    throw RangeError("dgn: needs 2c+1 < ell to hold q1^2 + q2^2, got " +
                     describe(cfg));
  }
  if (opt.max_attempts == 0) throw UsageError("dgn: zero attempt budget");
  DgnOutcome out;
  out.scale_bits = dgn_scale_bits(cfg, opt.sigma);
  const auto parties = all_parties(n);
  const std::uint64_t grid_mod = std::uint64_t{1} << cfg.c;
  const std::uint64_t unit_sq = std::uint64_t{1} << (2 * cfg.c);
  std::vector<std::uint64_t> acc(n), tmp(n);

  // Each party contributes a uniform ring element, shared with all.
  auto joint_uniform = [&]() {
    out.bits += pair_bits(n, cfg.ell);
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      split_raw(rng.next_u64() & cfg.mask(), cfg, rng, tmp);
      for (std::uint32_t j = 0; j < n; ++j) acc[j] += tmp[j];
    }
    return Sharing(parties, acc, cfg);
  };

  Sharing q[2], p[2];
  for (;;) {
    if (out.attempts == opt.max_attempts) {
      throw SamplingFailure("dgn: no accepted pair after " +
                            std::to_string(opt.max_attempts) + " attempts");
    }
    ++out.attempts;
    for (int c = 0; c < 2; ++c) {
      q[c] = f_mod_ideal(joint_uniform(), grid_mod, rng);
      p[c] = f_mod_ideal(joint_uniform(), 2, rng);
      out.bits += 2 * opt.mod_cost.bits(n, cfg.ell);
    }
    const Sharing u_sh = add_local(square(q[0], rng, out.bits),
                                   square(q[1], rng, out.bits));
    const std::uint64_t u_raw = open(u_sh, out.bits);
    out.rounds += dgn_attempt_rounds(opt);
    if (u_raw > 0 && u_raw < unit_sq) {
      out.u = static_cast<double>(u_raw) / static_cast<double>(unit_sq);
      break;
    }
  }

  const double t = std::sqrt(-2.0 * std::log(out.u) / out.u);
  const auto k = static_cast<std::uint64_t>(
      std::llround(opt.sigma * t * std::ldexp(1.0, out.scale_bits)));
  Sharing z[2];
  for (int c = 0; c < 2; ++c) {
    // 1 - 2p is +1 or -1.
    const Sharing sgn = add_public(scale_local(p[c], cfg.mask() - 1), 1);
    const Sharing signed_q = beaver_mul(sgn, q[c], rng, out.bits);
    z[c] = f_trunc_ideal(scale_local(signed_q, k), out.scale_bits, rng);
    out.bits += opt.trunc_cost.bits(n, cfg.ell);
  }
  out.rounds += dgn_final_rounds(opt);
  out.z1_grid = signed_total(z[0]);
  out.z2_grid = signed_total(z[1]);
  out.z1 = std::move(z[0]);
  out.z2 = std::move(z[1]);
  return out;
}

}  // namespace umpc
