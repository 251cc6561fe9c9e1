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

#include "umpc/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "umpc/error.hpp"

namespace umpc {

namespace {

constexpr int kRestartBudget = 64;
constexpr std::uint64_t kDrawBudgetFactor = 100;

// Membership test for sorted edges. Packs the edge into one word when
// k * bit_width(n) fits, otherwise falls back to an ordered set.
class EdgeSet {
 public:
  EdgeSet(std::uint32_t n, std::uint32_t k, std::size_t expected)
      : shift_(std::bit_width(n)), packed_(k * shift_ <= 64) {
    if (packed_) keys_.reserve(expected);
  }

  // Returns false when already present.
  bool insert(std::span<const Vertex> e) {
    if (packed_) return keys_.insert(pack(e)).second;
    return wide_.emplace(e.begin(), e.end()).second;
  }

  void clear() {
    keys_.clear();
    wide_.clear();
  }

 private:
  std::uint64_t pack(std::span<const Vertex> e) const {
    std::uint64_t key = 0;
    for (const Vertex v : e) key = (shift_ == 64 ? 0 : key << shift_) | v;
    return key;
  }

  unsigned shift_;
  bool packed_;
  std::unordered_set<std::uint64_t> keys_;
  std::set<std::vector<Vertex>> wide_;
};

// Fenwick tree over non-negative integer weights.
class WeightTree {
 public:
  explicit WeightTree(std::size_t n) : tree_(n + 1, 0), weights_(n, 0) {}

  void set(std::size_t i, std::uint64_t w) {
    const auto delta = static_cast<std::int64_t>(w) -
                       static_cast<std::int64_t>(weights_[i]);
    weights_[i] = w;
    for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) {
      tree_[j] = static_cast<std::uint64_t>(
          static_cast<std::int64_t>(tree_[j]) + delta);
    }
    total_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(total_) +
                                        delta);
  }

  std::uint64_t weight(std::size_t i) const { return weights_[i]; }
  std::uint64_t total() const { return total_; }

  // Smallest index whose prefix sum exceeds `target`; target < total().
  std::size_t find(std::uint64_t target) const {
    std::size_t pos = 0;
    std::size_t step = std::bit_floor(tree_.size() - 1);
    for (; step != 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::vector<std::uint64_t> weights_;
  std::uint64_t total_ = 0;
};

void check_arity(std::uint32_t k, std::uint32_t n) {
  if (k == 0) throw UsageError("sampling: arity k must be >= 1");
  if (k > n) {
    throw UsageError("sampling: arity k=" + std::to_string(k) +
                     " exceeds vertex count n=" + std::to_string(n));
  }
}

std::uint64_t checked_binomial(std::uint32_t n, std::uint32_t k) {
  const auto total = binomial(n, k);
  if (!total) {
    throw ScaleError("sampling: C(" + std::to_string(n) + "," +
                     std::to_string(k) + ") overflows 64 bits");
  }
  return *total;
}

void check_size(std::uint64_t m, std::uint32_t k, std::uint32_t n) {
  const std::uint64_t total = checked_binomial(n, k);
  if (m > total) {
    throw UsageError("sampling: m=" + std::to_string(m) + " exceeds C(" +
                     std::to_string(n) + "," + std::to_string(k) +
                     ")=" + std::to_string(total));
  }
}

}  // namespace

Hypergraph::Hypergraph(std::uint32_t n, std::uint32_t k) : n_(n), k_(k) {
  if (k == 0) throw UsageError("hypergraph: arity must be >= 1");
}

Hypergraph::Hypergraph(std::uint32_t n, std::uint32_t k,
                       std::vector<Vertex> flat_edges)
    : n_(n), k_(k), flat_(std::move(flat_edges)) {
  if (k == 0) throw UsageError("hypergraph: arity must be >= 1");
  if (flat_.size() % k != 0) {
    throw UsageError("hypergraph: edge list length is not a multiple of k");
  }
  EdgeSet seen(n, k, num_edges());
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto e = edge(i);
    for (std::size_t j = 0; j < k; ++j) {
      if (e[j] >= n) {
        throw UsageError("hypergraph: vertex " + std::to_string(e[j]) +
                         " out of range for n=" + std::to_string(n));
      }
      if (j > 0 && e[j - 1] >= e[j]) {
        throw UsageError("hypergraph: edge " + std::to_string(i) +
                         " is not sorted or repeats a vertex");
      }
    }
    if (!seen.insert(e)) {
      throw UsageError("hypergraph: duplicate edge " + std::to_string(i));
    }
  }
}

DegreeProfile degree_profile(const Hypergraph& g) {
  DegreeProfile p;
  p.degrees.assign(g.n(), 0);
  for (const Vertex v : g.flat()) ++p.degrees[v];
  if (!p.degrees.empty()) {
    const auto [lo, hi] = std::minmax_element(p.degrees.begin(), p.degrees.end());
    p.min_degree = *lo;
    p.max_degree = *hi;
  }
  return p;
}

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

void unrank_combination(std::uint64_t rank, std::uint32_t n, std::uint32_t k,
                        std::span<Vertex> out) {
  // Colex order: the largest element c_i satisfies C(c_i, i) <= rank.
  std::uint64_t hi_bound = n;
  for (std::uint32_t i = k; i >= 1; --i) {
    std::uint64_t lo = i - 1;
    std::uint64_t hi = hi_bound;
    // Largest c in [lo, hi) with C(c, i) <= rank.
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      const auto b = binomial(mid, i);
      if (b && *b <= rank) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out[i - 1] = static_cast<Vertex>(lo);
    rank -= *binomial(lo, i);
    hi_bound = lo;
  }
}

Hypergraph balanced_samp(std::uint64_t m, std::uint32_t k, std::uint32_t n,
                         Rng& rng) {
  check_arity(k, n);
  check_size(m, k, n);
  Hypergraph g(n, k);
  if (m == 0) return g;

  const std::uint64_t capacity = (static_cast<std::uint64_t>(k) * m + n - 1) / n;
  const std::uint64_t draw_budget = kDrawBudgetFactor * m;
  std::vector<Vertex> e(k);
  std::vector<std::uint64_t> removed(k);
  EdgeSet seen(n, k, m);

  for (int restart = 0; restart <= kRestartBudget; ++restart) {
    WeightTree cap(n);
    for (std::uint32_t v = 0; v < n; ++v) cap.set(v, capacity);
    std::uint32_t nonzero = n;
    Hypergraph out(n, k);
    seen.clear();
    std::uint64_t draws = 0;
    bool stuck = false;

    while (out.num_edges() < m) {
      if (nonzero < k || draws >= draw_budget) {
        stuck = true;
        break;
      }
      ++draws;
      // Sequential capacity-weighted draws without replacement.
      for (std::uint32_t j = 0; j < k; ++j) {
        const std::size_t v = cap.find(rng.uniform_below(cap.total()));
        e[j] = static_cast<Vertex>(v);
        removed[j] = cap.weight(v);
        cap.set(v, 0);
      }
      for (std::uint32_t j = 0; j < k; ++j) cap.set(e[j], removed[j]);
      std::sort(e.begin(), e.end());
      if (!seen.insert(e)) continue;
      out.push_edge_unchecked(e);
      for (const Vertex v : e) {
        const std::uint64_t w = cap.weight(v);
        if (w > 0) {
          cap.set(v, w - 1);
          if (w == 1) --nonzero;
        }
      }
    }
    if (!stuck) return out;
  }
  throw SamplingFailure("balanced_samp: restart budget exhausted for m=" +
                        std::to_string(m) + " k=" + std::to_string(k) +
                        " n=" + std::to_string(n));
}

Hypergraph bernoulli_samp(double q, std::uint32_t k, std::uint32_t n,
                          Rng& rng) {
  check_arity(k, n);
  if (!(q >= 0.0 && q <= 1.0)) {
    throw UsageError("bernoulli_samp: q must be in [0, 1]");
  }
  const std::uint64_t total = checked_binomial(n, k);
  Hypergraph g(n, k);
  if (q == 0.0 || total == 0) return g;
  std::vector<Vertex> e(k);
  if (q == 1.0) {
    for (std::uint64_t r = 0; r < total; ++r) {
      unrank_combination(r, n, k, e);
      g.push_edge_unchecked(e);
    }
    return g;
  }
  // Geometric skips between included ranks.
  const double log_miss = std::log1p(-q);
  std::uint64_t rank = 0;
  while (true) {
    const double skip = std::floor(std::log(rng.uniform_open01()) / log_miss);
    if (skip >= static_cast<double>(total - rank)) break;
    rank += static_cast<std::uint64_t>(skip);
    unrank_combination(rank, n, k, e);
    g.push_edge_unchecked(e);
    if (++rank >= total) break;
  }
  return g;
}

Hypergraph uniform_without_replacement(std::uint64_t m, std::uint32_t k,
                                       std::uint32_t n, Rng& rng) {
  check_arity(k, n);
  check_size(m, k, n);
  const std::uint64_t total = checked_binomial(n, k);
  Hypergraph g(n, k);
  // Partial Fisher-Yates over the virtual array of ranks [0, total).
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  swapped.reserve(2 * m);
  auto at = [&](std::uint64_t i) {
    const auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<Vertex> e(k);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t j = i + rng.uniform_below(total - i);
    const std::uint64_t pick = at(j);
    swapped[j] = at(i);
    unrank_combination(pick, n, k, e);
    g.push_edge_unchecked(e);
  }
  return g;
}

SamplerKind parse_sampler(const std::string& name) {
  if (name == "balanced") return SamplerKind::kBalanced;
  if (name == "uniform") return SamplerKind::kUniform;
  if (name == "bernoulli") return SamplerKind::kBernoulli;
  throw UsageError("unknown sampler '" + name +
                   "' (expected balanced|uniform|bernoulli)");
}

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kBalanced:
      return "balanced";
    case SamplerKind::kUniform:
      return "uniform";
    case SamplerKind::kBernoulli:
      return "bernoulli";
  }
  return "?";
}

Hypergraph sample_graph(SamplerKind kind, std::uint64_t m, std::uint32_t k,
                        std::uint32_t n, Rng& rng) {
  switch (kind) {
    case SamplerKind::kBalanced:
      return balanced_samp(m, k, n, rng);
    case SamplerKind::kUniform:
      return uniform_without_replacement(m, k, n, rng);
    case SamplerKind::kBernoulli: {
      check_arity(k, n);
      const std::uint64_t total = checked_binomial(n, k);
      if (m > total) check_size(m, k, n);
      const double q =
          total == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(total);
      return bernoulli_samp(q, k, n, rng);
    }
  }
  throw UsageError("unknown sampler");
}

}  // namespace umpc
