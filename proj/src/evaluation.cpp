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
#include <functional>
#include <vector>

#include "umpc/baselines.hpp"
#include "umpc/error.hpp"
#include "umpc/protocol.hpp"

namespace umpc {

namespace {

constexpr double kCompleteGuard = 1e8;

// Welford accumulator.
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  Estimate estimate() const {
    Estimate e;
    e.mean = mean_;
    if (n_ > 1) {
      e.se = std::sqrt(m2_ / static_cast<double>(n_ - 1) /
                       static_cast<double>(n_));
    }
    return e;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double pair_value(const KernelSpec& k, const Dataset& d, std::size_t i,
                  std::size_t j) {
  const Row rows[2] = {d.row(i), d.row(j)};
  return k.fn(rows);
}

void check_inputs(const Dataset& data, const KernelSpec& kernel) {
  kernel.validate();
  check_dataset(kernel, data);
}

}  // namespace

double complete_ustat(const Dataset& data, const KernelSpec& kernel) {
  check_inputs(data, kernel);
  const std::size_t n = data.size();
  const std::uint32_t k = kernel.arity;
  if (n < k) {
    throw UsageError("complete_ustat: need at least " + std::to_string(k) +
                     " rows");
  }
  const auto total = binomial(n, k);
  if (!total || static_cast<double>(*total) > kCompleteGuard) {
    throw ScaleError("complete_ustat: C(" + std::to_string(n) + "," +
                     std::to_string(k) + ") exceeds the 1e8 enumeration guard");
  }
  double sum = 0.0;
  if (k == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sum += pair_value(kernel, data, i, j);
    }
  } else {
    std::vector<std::size_t> idx(k);
    std::vector<Row> rows(k);
    for (std::uint32_t j = 0; j < k; ++j) idx[j] = j;
    for (;;) {
      for (std::uint32_t j = 0; j < k; ++j) rows[j] = data.row(idx[j]);
      sum += kernel.fn(rows);
      int p = static_cast<int>(k) - 1;
      while (p >= 0 && idx[p] == n - k + static_cast<std::size_t>(p)) --p;
      if (p < 0) break;
      ++idx[p];
      for (std::uint32_t j = p + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return sum / static_cast<double>(*total);
}

double incomplete_ustat(const Dataset& data, const Hypergraph& g,
                        const KernelSpec& kernel) {
  check_inputs(data, kernel);
  if (g.empty()) throw UsageError("incomplete_ustat: empty edge set");
  if (g.k() != kernel.arity || g.n() != data.size()) {
    throw UsageError("incomplete_ustat: graph does not match data and kernel");
  }
  std::vector<Row> rows(g.k());
  double sum = 0.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto edge = g.edge(e);
    for (std::uint32_t j = 0; j < g.k(); ++j) rows[j] = data.row(edge[j]);
    sum += kernel.fn(rows);
  }
  return sum / static_cast<double>(g.num_edges());
}

double einc_bound(double big_n, double m) {
  if (!(m > 0.0) || m > big_n) {
    throw UsageError("einc_bound: need 0 < m <= N");
  }
  if (m == big_n) return 0.0;
  return (big_n - m) / (4.0 * m * (big_n - 1.0));
}

double edp_theory(double delta_g_max, double delta_f, double epsilon,
                  double m) {
  if (!(m > 0.0) || !(epsilon > 0.0)) {
    throw UsageError("edp_theory: need m > 0 and epsilon > 0");
  }
  if (std::isinf(epsilon)) return 0.0;
  const double s = delta_g_max * delta_f / (epsilon * m);
  return 2.0 * s * s;
}

double hoeffding_variance(double sigma1, double sigma2, double n) {
  if (!(n >= 2.0)) throw UsageError("hoeffding_variance: need n >= 2");
  return 2.0 / (n * (n - 1.0)) * (2.0 * (n - 2.0) * sigma1 + sigma2);
}

SigmaEstimates sigma_estimates(const Dataset& data, const KernelSpec& kernel) {
  check_inputs(data, kernel);
  if (kernel.arity != 2) {
    throw UsageError("sigma_estimates: pairwise kernels only");
  }
  const std::size_t n = data.size();
  if (n < 3) throw UsageError("sigma_estimates: need at least 3 rows");
  std::vector<double> cond(n, 0.0);
  Moments pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = pair_value(kernel, data, i, j);
      cond[i] += v;
      cond[j] += v;
      pairs.add(v);
    }
  }
  Moments c;
  for (double v : cond) c.add(v / static_cast<double>(n - 1));
  SigmaEstimates s;
  const Estimate ce = c.estimate(), pe = pairs.estimate();
  s.sigma1 = ce.se * ce.se * static_cast<double>(n);
  s.sigma2 = pe.se * pe.se * (static_cast<double>(n) * (n - 1) / 2.0);
  return s;
}

namespace {

Hypergraph draw_nonempty(SamplerKind kind, std::uint64_t m, std::uint32_t k,
                         std::uint32_t n, Rng& rng) {
  for (int i = 0; i < 64; ++i) {
    Hypergraph g = sample_graph(kind, m, k, n, rng);
    if (!g.empty()) return g;
  }
  throw SamplingFailure("sampler returned only empty edge sets");
}

}  // namespace

MseReport mse_experiment(const MseConfig& cfg) {
  if (cfg.repetitions == 0) throw UsageError("mse_experiment: zero repetitions");
  const Dataset held = quantized(cfg.data, cfg.fp);
  const auto n = static_cast<std::uint32_t>(held.size());
  const std::uint32_t k = cfg.kernel.arity;
  const auto big_n = binomial(n, k);
  if (!big_n) throw ScaleError("mse_experiment: C(n,k) overflows");
  if (cfg.edges == 0 || cfg.edges > *big_n) {
    throw UsageError("mse_experiment: edge count must lie in [1, C(n,k)]");
  }

  MseReport rep;
  rep.repetitions = cfg.repetitions;
  rep.seed = cfg.seed;
  rep.reference = complete_ustat(held, cfg.kernel);
  rep.einc_bound = einc_bound(static_cast<double>(*big_n),
                              static_cast<double>(cfg.edges));
  if (k == 2 && n >= 3) {
    const SigmaEstimates s = sigma_estimates(held, cfg.kernel);
    rep.hoeffding = hoeffding_variance(s.sigma1, s.sigma2, n);
  }

  Moments mse, inc, dp, cond, edges, dmax;
  double edp_sum = 0.0, bits = 0.0, rounds = 0.0;
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    Rng rng(Rng::derive(cfg.seed, r));
    const Hypergraph g = draw_nonempty(cfg.sampler, cfg.edges, k, n, rng);
    const EstimateResult res =
        run_umpc(held, g, cfg.kernel, cfg.noise, cfg.fp, rng);
    const double m = static_cast<double>(res.num_edges);
    const double di = res.noiseless - rep.reference;
    const double dr = res.released - rep.reference;
    const double dn = res.released - res.noiseless;
    mse.add(dr * dr);
    inc.add(di * di);
    dp.add(dn * dn);
    NoiseSpec ns = cfg.noise;
    ns.sensitivity = res.noise_sensitivity;
    cond.add(di * di + noise_variance(ns, cfg.fp) / (m * m));
    edges.add(m);
    dmax.add(res.delta_g_max);
    if (!cfg.noise.disabled()) {
      edp_sum += edp_theory(res.delta_g_max, cfg.kernel.delta_f,
                            cfg.noise.epsilon, m);
    }
    bits += static_cast<double>(res.ledger.total_bits());
    rounds += res.ledger.total_rounds();
  }
  const double reps = static_cast<double>(cfg.repetitions);
  rep.mse = mse.estimate();
  rep.e_inc = inc.estimate();
  rep.e_dp = dp.estimate();
  rep.conditional_mse = cond.estimate();
  rep.edges = edges.estimate();
  rep.delta_g_max = dmax.estimate();
  rep.edp_theory = edp_sum / reps;
  rep.mean_bits = bits / reps;
  rep.mean_rounds = rounds / reps;
  rep.inc_within_bound = rep.e_inc.mean <= 1.1 * rep.einc_bound;
  rep.dp_calibrated =
      rep.edp_theory == 0.0
          ? rep.e_dp.mean == 0.0
          : std::fabs(rep.e_dp.mean / rep.edp_theory - 1.0) <= 0.15;
  return rep;
}

Estimate inc_experiment(const Dataset& data, const KernelSpec& kernel,
                        SamplerKind sampler, std::uint64_t edges,
                        std::size_t repetitions, std::uint64_t seed) {
  const double reference = complete_ustat(data, kernel);
  const auto n = static_cast<std::uint32_t>(data.size());
  Moments m;
  for (std::size_t r = 0; r < repetitions; ++r) {
    Rng rng(Rng::derive(seed, r));
    const Hypergraph g = draw_nonempty(sampler, edges, kernel.arity, n, rng);
    const double d = incomplete_ustat(data, g, kernel) - reference;
    m.add(d * d);
  }
  return m.estimate();
}

std::vector<std::string> reproduce_presets() {
  return {"gini-scaling", "kendall-tradeoff", "dupl-sampling"};
}

namespace {

std::size_t pick(std::size_t requested, std::size_t fallback) {
  return requested ? requested : fallback;
}

Table gini_scaling(const ReproduceOptions& opt) {
  const std::uint32_t n_max = static_cast<std::uint32_t>(pick(opt.n, 400));
  const std::size_t reps = pick(opt.repetitions, 30);
  const std::uint32_t t = 16;
  const double eps = 1.0;
  const FpConfig fp;
  const KernelSpec gini = builtin_kernel("gini", fp);
  Table tab;
  tab.header = {"n",        "edges",      "epsilon",     "umpc_mse",
                "umpc_mse_se", "einc_bound", "edp_theory", "bell_t",
                "bell_mse", "bell_mse_se", "umpc_bits",  "bell_bits"};
  for (std::uint32_t n : {n_max / 4, n_max / 2, n_max}) {
    if (n < 4) continue;
    Rng data_rng(Rng::derive(opt.seed, n));
    const Dataset data = gen_synthetic(n, SyntheticKind::kUniform01, data_rng);
    MseConfig cfg;
    cfg.data = data;
    cfg.kernel = gini;
    cfg.edges = std::min<std::uint64_t>(10ull * n, *binomial(n, 2));
    cfg.noise.epsilon = eps;
    cfg.fp = fp;
    cfg.repetitions = reps;
    cfg.seed = Rng::derive(opt.seed, 1000 + n);
    const MseReport r = mse_experiment(cfg);

    Moments bell;
    Rng bell_rng(Rng::derive(opt.seed, 2000 + n));
    for (std::size_t i = 0; i < reps; ++i) {
      const double d = bell_estimate(quantized(data, fp), gini, t, eps, bell_rng)
                           .estimate -
                       r.reference;
      bell.add(d * d);
    }
    const Estimate b = bell.estimate();
    CostParams cp;
    cp.n = n;
    cp.t = t;
    cp.ell = fp.ell;
    cp.edges = static_cast<double>(cfg.edges);
    tab.rows.push_back({std::int64_t{n}, static_cast<std::int64_t>(cfg.edges),
                        eps, r.mse.mean, r.mse.se, r.einc_bound, r.edp_theory,
                        std::int64_t{t}, b.mean, b.se, r.mean_bits,
                        cost_eval(CostProtocol::kBell, cp).bits});
  }
  return tab;
}

Table kendall_tradeoff(const ReproduceOptions& opt) {
  const std::uint32_t n = static_cast<std::uint32_t>(pick(opt.n, 200));
  const std::size_t reps = pick(opt.repetitions, 20);
  const FpConfig fp;
  Rng data_rng(Rng::derive(opt.seed, 0));
  const Dataset data = gen_synthetic(n, SyntheticKind::kUniform01Pairs, data_rng);
  const std::uint64_t big_n = *binomial(n, 2);
  Table tab;
  tab.header = {"epsilon",    "edge_fraction", "edges",      "bits_total",
                "rounds_total", "mse",         "mse_se",     "einc_bound",
                "edp_theory"};
  std::uint64_t stream = 1;
  for (double eps : {0.5, 1.0, 2.0}) {
    for (double frac : {0.01, 0.05, 0.2, 0.5}) {
      MseConfig cfg;
      cfg.data = data;
      cfg.kernel = builtin_kernel("kendall", fp);
      cfg.edges = std::max<std::uint64_t>(
          1, static_cast<std::uint64_t>(std::llround(frac * big_n)));
      cfg.noise.epsilon = eps;
      cfg.fp = fp;
      cfg.repetitions = reps;
      cfg.seed = Rng::derive(opt.seed, stream++);
      const MseReport r = mse_experiment(cfg);
      tab.rows.push_back({eps, frac, static_cast<std::int64_t>(cfg.edges),
                          r.mean_bits, r.mean_rounds, r.mse.mean, r.mse.se,
                          r.einc_bound, r.edp_theory});
    }
  }
  return tab;
}

Table dupl_sampling(const ReproduceOptions& opt) {
  const std::uint32_t n = static_cast<std::uint32_t>(pick(opt.n, 500));
  const std::size_t reps = pick(opt.repetitions, 50);
  const FpConfig fp;
  Rng data_rng(Rng::derive(opt.seed, 0));
  const Dataset data = gen_synthetic(n, SyntheticKind::kCategorical, data_rng);
  const std::uint64_t big_n = *binomial(n, 2);
  Table tab;
  tab.header = {"sampler",         "edges_mean",         "delta_g_max_mean",
                "mse",             "mse_se",             "conditional_mse",
                "conditional_mse_se", "e_inc",           "e_dp",
                "einc_bound",      "edp_theory"};
  for (SamplerKind s : {SamplerKind::kBalanced, SamplerKind::kUniform,
                        SamplerKind::kBernoulli}) {
    MseConfig cfg;
    cfg.data = data;
    cfg.kernel = builtin_kernel("dup", fp);
    cfg.sampler = s;
    cfg.edges = big_n / 2;
    cfg.noise.epsilon = 1.0;
    cfg.fp = fp;
    cfg.repetitions = reps;
    cfg.seed = Rng::derive(opt.seed, 1);
    const MseReport r = mse_experiment(cfg);
    tab.rows.push_back({to_string(s), r.edges.mean, r.delta_g_max.mean,
                        r.mse.mean, r.mse.se, r.conditional_mse.mean,
                        r.conditional_mse.se, r.e_inc.mean, r.e_dp.mean,
                        r.einc_bound, r.edp_theory});
  }
  return tab;
}

}  // namespace

Table reproduce(const std::string& preset, const ReproduceOptions& opt) {
  if (preset == "gini-scaling") return gini_scaling(opt);
  if (preset == "kendall-tradeoff") return kendall_tradeoff(opt);
  if (preset == "dupl-sampling") return dupl_sampling(opt);
  throw UsageError("unknown preset '" + preset +
                   "' (expected gini-scaling|kendall-tradeoff|dupl-sampling)");
}

}  // namespace umpc
