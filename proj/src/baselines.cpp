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

#include <algorithm>
#include <cmath>

#include "umpc/error.hpp"

namespace umpc {

namespace {

constexpr std::uint32_t kMaxJointBins = 1024;

void check_bins(std::uint32_t bin, std::uint32_t t) {
  if (t == 0) throw UsageError("bell: t must be >= 1");
  if (bin < 1 || bin > t) {
    throw UsageError("bell: bin " + std::to_string(bin) + " outside [1, " +
                     std::to_string(t) + "]");
  }
}

// Sum over unordered pairs of distinct parties of m(bin_a, bin_b), from the
// bin histogram. m must be symmetric.
double pair_sum(const std::vector<double>& counts, const Matrix& m) {
  double all = 0.0, diag = 0.0;
  for (std::uint32_t i = 1; i <= m.t; ++i) {
    const double ci = counts[i - 1];
    if (ci == 0) continue;
    double row = 0.0;
    for (std::uint32_t j = 1; j <= m.t; ++j) row += counts[j - 1] * m(i, j);
    all += ci * row;
    diag += ci * m(i, i);
  }
  return (all - diag) / 2.0;
}

double log2_or_zero(double x) { return x > 1.0 ? std::log2(x) : 0.0; }

}  // namespace

double bell_beta_exact(double epsilon, std::uint32_t t) {
  if (!(epsilon > 0.0) || t == 0) {
    throw UsageError("bell: need epsilon > 0 and t >= 1");
  }
  return 1.0 / (std::expm1(epsilon) / t + 1.0);
}

double bell_beta_relaxed(double epsilon, std::uint32_t t) {
  if (!(epsilon > 0.0) || t == 0) {
    throw UsageError("bell: need epsilon > 0 and t >= 1");
  }
  return 1.0 / (epsilon / t + 1.0);
}

BellConfig BellConfig::from_epsilon(std::uint32_t t, double epsilon) {
  BellConfig c;
  c.t = t;
  c.epsilon = epsilon;
  c.beta = bell_beta_exact(epsilon, t);
  return c;
}

void BellConfig::validate() const {
  if (t == 0) throw UsageError("bell: t must be >= 1");
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw UsageError("bell: beta must lie in [0, 1)");
  }
}

std::uint32_t discretize(double x, std::uint32_t t) {
  if (t == 0) throw UsageError("discretize: t must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("discretize: " + std::to_string(x) + " outside [0,1]");
  }
  const double b = std::ceil(x * t);
  return static_cast<std::uint32_t>(std::clamp(b, 1.0, static_cast<double>(t)));
}

double representative(std::uint32_t bin, std::uint32_t t) {
  check_bins(bin, t);
  return (bin - 0.5) / t;
}

std::uint32_t bell_randomizer(std::uint32_t bin, std::uint32_t t, double beta,
                              Rng& rng) {
  check_bins(bin, t);
  if (rng.bernoulli(beta)) {
    return static_cast<std::uint32_t>(rng.uniform_below(t)) + 1;
  }
  return bin;
}

double bell_transition(std::uint32_t x, std::uint32_t y, std::uint32_t t,
                       double beta) {
  check_bins(x, t);
  check_bins(y, t);
  return beta / t + (x == y ? 1.0 - beta : 0.0);
}

Matrix kernel_matrix(const KernelSpec& kernel, std::uint32_t t) {
  if (kernel.arity != 2 || kernel.components != 1) {
    throw UnsupportedKernel("kernel " + kernel.name +
                            " has no scalar matrix form");
  }
  Matrix m{t, std::vector<double>(static_cast<std::size_t>(t) * t)};
  for (std::uint32_t i = 1; i <= t; ++i) {
    for (std::uint32_t j = 1; j <= t; ++j) {
      const double xi = representative(i, t), xj = representative(j, t);
      const Row rows[2] = {Row(&xi, 1), Row(&xj, 1)};
      m.at(i, j) = kernel.fn(rows);
    }
  }
  return m;
}

double bell_fhat(std::uint32_t i, std::uint32_t j, const Matrix& a,
                 double beta) {
  const std::uint32_t t = a.t;
  check_bins(i, t);
  check_bins(j, t);
  const double b = beta / t;
  double row_i = 0.0, col_j = 0.0, total = 0.0;
  for (std::uint32_t l = 1; l <= t; ++l) {
    row_i += a(i, l);
    col_j += a(l, j);
    for (std::uint32_t r = 1; r <= t; ++r) total += a(l, r);
  }
  const double q = (a(i, j) - b * row_i - b * col_j + b * b * total);
  return q / ((1.0 - beta) * (1.0 - beta));
}

Matrix bell_fhat_matrix(const Matrix& a, double beta) {
  const std::uint32_t t = a.t;
  const double b = beta / t;
  std::vector<double> rows(t, 0.0), cols(t, 0.0);
  double total = 0.0;
  for (std::uint32_t i = 1; i <= t; ++i) {
    for (std::uint32_t j = 1; j <= t; ++j) {
      rows[i - 1] += a(i, j);
      cols[j - 1] += a(i, j);
      total += a(i, j);
    }
  }
  const double scale = 1.0 / ((1.0 - beta) * (1.0 - beta));
  Matrix f{t, std::vector<double>(a.a.size())};
  for (std::uint32_t i = 1; i <= t; ++i) {
    for (std::uint32_t j = 1; j <= t; ++j) {
      f.at(i, j) = scale * (a(i, j) - b * rows[i - 1] - b * cols[j - 1] +
                            b * b * total);
    }
  }
  return f;
}

BellResult bell_estimate(const Dataset& data, const KernelSpec& kernel,
                         const BellConfig& cfg, Rng& rng) {
  cfg.validate();
  if (kernel.arity != 2) {
    throw UnsupportedKernel("bell: kernel " + kernel.name + " is not pairwise");
  }
  if (data.components() != kernel.components) {
    throw UsageError("bell: dataset rows do not match kernel " + kernel.name);
  }
  if (data.size() < 2) throw UsageError("bell: need at least 2 parties");

  const std::uint32_t t = cfg.t;
  Matrix a;
  std::vector<std::uint32_t> bins(data.size());
  if (kernel.components == 1) {
    a = kernel_matrix(kernel, t);
    for (std::size_t i = 0; i < data.size(); ++i) {
      bins[i] = discretize(data.row(i)[0], t);
    }
  } else if (kernel.name == "kendall") {
    const std::uint64_t joint = std::uint64_t{t} * t;
    if (joint > kMaxJointBins) {
      throw UnsupportedKernel("bell: joint-bin kendall needs t^2 <= 1024");
    }
    const auto tt = static_cast<std::uint32_t>(joint);
    a = Matrix{tt, std::vector<double>(static_cast<std::size_t>(tt) * tt)};
    for (std::uint32_t p = 1; p <= tt; ++p) {
      const double pv[2] = {representative((p - 1) / t + 1, t),
                            representative((p - 1) % t + 1, t)};
      for (std::uint32_t q = 1; q <= tt; ++q) {
        const double qv[2] = {representative((q - 1) / t + 1, t),
                              representative((q - 1) % t + 1, t)};
        a.at(p, q) = kendall_pair(Row(pv, 2), Row(qv, 2));
      }
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Row r = data.row(i);
      bins[i] = (discretize(r[0], t) - 1) * t + discretize(r[1], t);
    }
  } else {
    throw UnsupportedKernel("bell: kernel " + kernel.name +
                            " has no binned matrix form");
  }

  // The flip probability is calibrated for the number of bins actually
  // randomized over.
  BellResult res;
  res.bins = a.t;
  res.beta = a.t == t ? cfg.beta : bell_beta_exact(cfg.epsilon, a.t);
  const Matrix f = bell_fhat_matrix(a, res.beta);

  std::vector<double> clean(a.t, 0.0), noisy(a.t, 0.0);
  for (std::uint32_t b : bins) {
    clean[b - 1] += 1.0;
    noisy[bell_randomizer(b, a.t, res.beta, rng) - 1] += 1.0;
  }
  const double n = static_cast<double>(data.size());
  const double pairs = n * (n - 1) / 2.0;
  res.estimate = pair_sum(noisy, f) / pairs;
  res.discretized = pair_sum(clean, a) / pairs;
  return res;
}

BellResult bell_estimate(const Dataset& data, const KernelSpec& kernel,
                         std::uint32_t t, double epsilon, Rng& rng) {
  return bell_estimate(data, kernel, BellConfig::from_epsilon(t, epsilon), rng);
}

double bell_mse_bound(std::size_t n, double beta) {
  if (n < 2) throw UsageError("bell_mse_bound: need n >= 2");
  const double nn = static_cast<double>(n);
  const double ob = 1.0 - beta;
  return 1.0 / (nn * ob * ob) +
         (1.0 + beta) * (1.0 + beta) / (2.0 * nn * (nn - 1) * ob * ob * ob * ob);
}

std::string to_string(CostProtocol p) {
  switch (p) {
    case CostProtocol::kBell: return "Bell";
    case CostProtocol::kGhazi: return "Ghazi";
    case CostProtocol::kGhaziSM: return "GhaziSM";
    case CostProtocol::kUmpcDis: return "Umpc_Dis";
    case CostProtocol::kUmpcHF: return "Umpc_HF";
  }
  return "unknown";
}

std::vector<CostProtocol> all_cost_protocols() {
  return {CostProtocol::kBell, CostProtocol::kGhazi, CostProtocol::kGhaziSM,
          CostProtocol::kUmpcDis, CostProtocol::kUmpcHF};
}

CostReport cost_eval(CostProtocol p, const CostParams& q) {
  if (!(q.n > 0 && q.t > 0 && q.epsilon > 0 && q.ell > 0 && q.edges > 0)) {
    throw UsageError("cost_eval: n, t, epsilon, ell and |E| must be positive");
  }
  const double lt = log2_or_zero(q.t);
  const double ln = log2_or_zero(q.n);
  const double e2 = q.epsilon * q.epsilon;
  const double lf2 = q.lipschitz * q.lipschitz;
  const double disc = lf2 / (q.t * q.t);
  CostReport r;
  r.protocol = to_string(p);
  switch (p) {
    case CostProtocol::kBell:
      r.bits = q.n * q.ell * q.t;
      r.party_ops = q.t;
      r.server_ops = q.n * q.n * q.t * q.t;
      r.mse = disc + q.t * q.t / (q.n * e2);
      break;
    case CostProtocol::kGhazi:
      r.bits = q.n * q.n * e2 * lt * q.ell;
      r.party_ops = e2 * q.n * q.t * lt;
      r.server_ops = e2 * q.n * q.n * lt;
      r.mse = disc + q.t * q.t * lf2 * lt / (e2 * q.n);
      break;
    case CostProtocol::kGhaziSM:
      r.bits = ln * q.n * q.n * e2 * lt * q.ell;
      r.party_ops = e2 * q.n * q.t * lt + q.t * ln;
      r.server_ops = ln * e2 * q.n * q.n * lt;
      r.mse = disc + q.t * q.t * lf2 * lt / (e2 * q.n * q.n);
      break;
    case CostProtocol::kUmpcDis:
    case CostProtocol::kUmpcHF: {
      const double noise_bits = p == CostProtocol::kUmpcDis
                                    ? q.n * q.n * q.ell * q.c_eta
                                    : q.n * q.ell * q.c_eta;
      r.bits = q.edges * (q.ell + q.comm_f) + noise_bits;
      r.party_ops = q.edges / q.n * q.ops_f + q.n;
      r.server_ops = q.n;
      r.mse = 1.0 / q.edges + 1.0 / (q.n * q.n * e2);
      break;
    }
  }
  return r;
}

}  // namespace umpc
