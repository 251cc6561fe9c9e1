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

// k-uniform hypergraphs over the parties and the samplers that choose which
// k-tuples the kernel is evaluated on.

#ifndef UMPC_SAMPLING_HPP_
#define UMPC_SAMPLING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "umpc/rng.hpp"

namespace umpc {

using Vertex = std::uint32_t;

// Vertices are 0-based. Edges are stored flat, k vertices each, every edge
// sorted ascending. Edges are pairwise distinct.
class Hypergraph {
 public:
  Hypergraph(std::uint32_t n, std::uint32_t k);
  // Validates arity, range, sortedness and distinctness; throws UsageError.
  Hypergraph(std::uint32_t n, std::uint32_t k, std::vector<Vertex> flat_edges);

  std::uint32_t n() const { return n_; }
  std::uint32_t k() const { return k_; }
  std::size_t num_edges() const { return flat_.size() / k_; }
  bool empty() const { return flat_.empty(); }
  std::span<const Vertex> edge(std::size_t i) const {
    return {flat_.data() + i * k_, k_};
  }
  const std::vector<Vertex>& flat() const { return flat_; }

  // Appends an already sorted, not yet present edge. Unchecked.
  void push_edge_unchecked(std::span<const Vertex> e) {
    flat_.insert(flat_.end(), e.begin(), e.end());
  }

 private:
  std::uint32_t n_;
  std::uint32_t k_;
  std::vector<Vertex> flat_;
};

struct DegreeProfile {
  std::vector<std::uint32_t> degrees;
  std::uint32_t max_degree = 0;
  std::uint32_t min_degree = 0;
};

DegreeProfile degree_profile(const Hypergraph& g);

// C(n, k), or nullopt on 64-bit overflow.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

// Inverse of the colexicographic rank: writes the sorted k-subset of [n]
// with the given rank (< C(n,k)) into `out`.
void unrank_combination(std::uint64_t rank, std::uint32_t n, std::uint32_t k,
                        std::span<Vertex> out);

// Capacity-constrained sampler: every vertex ends with degree at most
// ceil(k*m/n). Duplicate draws are rejected without consuming capacity
// (budget 100*m draws per attempt); a full restart happens whenever fewer
// than k vertices have capacity left (budget 64 restarts).
Hypergraph balanced_samp(std::uint64_t m, std::uint32_t k, std::uint32_t n,
                         Rng& rng);

// Each k-subset independently with probability q.
Hypergraph bernoulli_samp(double q, std::uint32_t k, std::uint32_t n, Rng& rng);

// Uniform over all size-m subsets of the k-subsets of [n].
Hypergraph uniform_without_replacement(std::uint64_t m, std::uint32_t k,
                                       std::uint32_t n, Rng& rng);

enum class SamplerKind { kBalanced, kUniform, kBernoulli };

SamplerKind parse_sampler(const std::string& name);
std::string to_string(SamplerKind kind);

// Draws with the given strategy at size m; Bernoulli uses q = m / C(n,k) so
// that the expected size matches.
Hypergraph sample_graph(SamplerKind kind, std::uint64_t m, std::uint32_t k,
                        std::uint32_t n, Rng& rng);

}  // namespace umpc

#endif  // UMPC_SAMPLING_HPP_
