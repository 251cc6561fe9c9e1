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

#include "umpc/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "umpc/error.hpp"

namespace umpc {

namespace {

// Slot of edge e inside the state of its member at position p. Edges are
// visited in id order, so a binary search over a member's edge list
// finds it.
std::size_t slot_of(const PartyState& p, std::uint32_t e) {
  const auto it = std::lower_bound(p.edges.begin(), p.edges.end(), e);
  return static_cast<std::size_t>(it - p.edges.begin());
}

std::size_t components_of(const std::vector<PartyState>& parties) {
  return parties.empty() ? 0 : parties.front().input.size();
}

}  // namespace

std::uint32_t CostLedger::total_rounds() const {
  const std::uint32_t middle = parallel
                                   ? std::max(computing.rounds, noise.rounds)
                                   : computing.rounds + noise.rounds;
  return sharing.rounds + middle + aggregation.rounds;
}

std::vector<PartyState> make_parties(const Dataset& data, const Hypergraph& g,
                                     const FpConfig& cfg) {
  if (data.size() != g.n()) {
    throw UsageError("dataset has " + std::to_string(data.size()) +
                     " rows but the graph has " + std::to_string(g.n()) +
                     " vertices");
  }
  const std::size_t comp = data.components();
  std::vector<PartyState> parties(g.n());
  for (std::uint32_t i = 0; i < g.n(); ++i) {
    parties[i].index = i;
    parties[i].input.resize(comp);
    const Row r = data.row(i);
    for (std::size_t c = 0; c < comp; ++c) {
      parties[i].input[c] = encode(r[c], cfg).raw();
    }
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    for (Vertex v : g.edge(e)) {
      parties[v].edges.push_back(static_cast<std::uint32_t>(e));
    }
  }
  const std::size_t k = g.k();
  for (auto& p : parties) {
    p.received.assign(p.edges.size() * k * comp, 0);
    p.f_shares.assign(p.edges.size(), 0);
  }
  return parties;
}

PhaseCost sharing_phase(std::vector<PartyState>& parties, const Hypergraph& g,
                        const FpConfig& cfg, Rng& rng) {
  const std::size_t k = g.k();
  const std::size_t comp = components_of(parties);
  std::vector<std::uint64_t> shares(k);
  std::vector<std::size_t> slots(k);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto edge = g.edge(e);
    for (std::size_t p = 0; p < k; ++p) {
      slots[p] = slot_of(parties[edge[p]], static_cast<std::uint32_t>(e));
    }
    for (std::size_t j = 0; j < k; ++j) {
      const PartyState& owner = parties[edge[j]];
      for (std::size_t c = 0; c < comp; ++c) {
        split_raw(owner.input[c], cfg, rng, shares);
        for (std::size_t p = 0; p < k; ++p) {
          parties[edge[p]].received[(slots[p] * k + j) * comp + c] = shares[p];
        }
      }
    }
  }
  PhaseCost cost;
  cost.bits = static_cast<std::uint64_t>(g.num_edges()) * k * (k - 1) *
              cfg.ell * comp;
  cost.rounds = 1;
  return cost;
}

Sharing f_f_ideal(std::size_t e, const Hypergraph& g,
                  const std::vector<PartyState>& parties,
                  const KernelSpec& kernel, const FpConfig& cfg, Rng& rng) {
  const std::size_t k = g.k();
  const std::size_t comp = components_of(parties);
  const auto edge = g.edge(e);
  std::vector<std::size_t> slots(k);
  for (std::size_t p = 0; p < k; ++p) {
    slots[p] = slot_of(parties[edge[p]], static_cast<std::uint32_t>(e));
  }
  std::vector<double> values(k * comp);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t c = 0; c < comp; ++c) {
      std::uint64_t raw = 0;
      for (std::size_t p = 0; p < k; ++p) {
        raw += parties[edge[p]].received[(slots[p] * k + j) * comp + c];
      }
      values[j * comp + c] = decode(FpValue(raw, cfg));
    }
  }
  std::vector<Row> rows(k);
  for (std::size_t j = 0; j < k; ++j) rows[j] = Row(values.data() + j * comp, comp);
  const FpValue y = encode(kernel.fn(rows), cfg);
  std::vector<std::uint64_t> out(k);
  split_raw(y.raw(), cfg, rng, out);
  return Sharing(std::vector<PartyId>(edge.begin(), edge.end()),
                 std::move(out), cfg);
}

PhaseCost computing_phase(std::vector<PartyState>& parties,
                          const Hypergraph& g, const KernelSpec& kernel,
                          const FpConfig& cfg, Rng& rng) {
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Sharing y = f_f_ideal(e, g, parties, kernel, cfg, rng);
    for (std::size_t p = 0; p < y.size(); ++p) {
      PartyState& member = parties[y.parties()[p]];
      member.f_shares[slot_of(member, static_cast<std::uint32_t>(e))] =
          y.shares()[p];
    }
  }
  PhaseCost cost;
  cost.bits = static_cast<std::uint64_t>(g.num_edges()) *
              kernel.comm_bits_per_eval;
  cost.rounds = kernel.rounds_per_eval;
  return cost;
}

AggregationResult aggregation_phase(const std::vector<PartyState>& parties,
                                    std::size_t num_edges, const FpConfig& cfg,
                                    PartyId aggregator) {
  if (num_edges == 0) throw UsageError("aggregation: empty edge set");
  if (aggregator >= parties.size()) {
    throw UsageError("aggregation: aggregator " + std::to_string(aggregator) +
                     " is not a party");
  }
  AggregationResult res;
  for (const auto& p : parties) res.sum_raw += p.z;
  res.sum_raw &= cfg.mask();
  res.released =
      decode(FpValue(res.sum_raw, cfg)) / static_cast<double>(num_edges);
  res.cost.bits = static_cast<std::uint64_t>(parties.size()) * cfg.ell;
  res.cost.rounds = 1;
  return res;
}

double sensitivity_bound(const Hypergraph& g, double delta_f) {
  if (g.empty()) throw UsageError("sensitivity_bound: empty edge set");
  return degree_profile(g).max_degree * delta_f /
         static_cast<double>(g.num_edges());
}

EstimateResult run_umpc(const Dataset& data, const Hypergraph& g,
                        const KernelSpec& kernel, const NoiseSpec& noise,
                        const FpConfig& cfg, Rng& rng,
                        const ProtocolOptions& opts) {
  cfg.validate();
  kernel.validate();
  if (g.empty()) throw UsageError("run_umpc: empty edge set");
  if (kernel.arity != g.k()) {
    throw UsageError("kernel " + kernel.name + " has arity " +
                     std::to_string(kernel.arity) + " but edges have " +
                     std::to_string(g.k()) + " vertices");
  }
  const Dataset held = quantized(data, cfg);
  check_dataset(kernel, held);

  const DegreeProfile deg = degree_profile(g);
  EstimateResult res;
  res.num_edges = g.num_edges();
  res.delta_g_max = deg.max_degree;
  res.min_degree = deg.min_degree;
  res.ledger.parallel = opts.parallel;

  if (opts.debug_checks) {
    const double bound = std::max(std::fabs(kernel.lo), std::fabs(kernel.hi));
    const double grid = std::ceil(bound / cfg.h()) * g.num_edges();
    if (!(grid < 0x1p62) ||
        !fits_without_wrap(static_cast<std::int64_t>(grid), cfg)) {
      throw RangeError("sum of " + std::to_string(g.num_edges()) +
                       " kernel values may wrap at " + describe(cfg));
    }
  }

  std::vector<PartyState> parties = make_parties(data, g, cfg);
  res.ledger.sharing = sharing_phase(parties, g, cfg, rng);
  res.ledger.computing = computing_phase(parties, g, kernel, cfg, rng);

  NoiseSpec ns = noise;
  res.noise_sensitivity = deg.max_degree * kernel.delta_f;
  ns.sensitivity = res.noise_sensitivity;
  ns.debug_checks = ns.debug_checks || opts.debug_checks;
  const NoiseOutcome eta = generate_noise(g.n(), ns, cfg, rng);
  res.eta_grid = eta.eta_grid;
  res.ledger.noise = {eta.bits, eta.rounds};

  std::uint64_t f_total = 0;
  for (auto& p : parties) {
    p.noise_share = eta.shares.shares()[p.index];
    std::uint64_t acc = 0;
    for (std::uint64_t s : p.f_shares) acc += s;
    f_total += acc;
    p.z = (acc + p.noise_share) & cfg.mask();
  }

  const AggregationResult agg =
      aggregation_phase(parties, g.num_edges(), cfg, opts.aggregator);
  res.released = agg.released;
  res.ledger.aggregation = agg.cost;
  res.noiseless = decode(FpValue(f_total, cfg)) /
                  static_cast<double>(g.num_edges());

  if (opts.debug_checks) {
    for (const auto& p : parties) {
      for (std::uint32_t e : p.edges) {
        const auto edge = g.edge(e);
        if (std::find(edge.begin(), edge.end(), p.index) == edge.end()) {
          throw UsageError("party " + std::to_string(p.index) +
                           " holds shares of a foreign edge");
        }
      }
    }
  }
  return res;
}

EstimateResult run_umpc(const Dataset& data, const Hypergraph& g,
                        const KernelSpec& kernel, const NoiseSpec& noise,
                        const FpConfig& cfg, std::uint64_t seed,
                        const ProtocolOptions& opts) {
  Rng rng(seed);
  EstimateResult res = run_umpc(data, g, kernel, noise, cfg, rng, opts);
  res.seed = seed;
  return res;
}

}  // namespace umpc
