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

// In-memory simulation of the four-phase protocol that releases a noisy
// incomplete U-statistic:
//
//   1. sharing      every edge member (k,k)-shares its input with the edge
//   2. computing    the ideal kernel functionality returns (k,k) shares of f
//   3. noise        the parties obtain (n,n) shares of the DP noise
//   4. aggregation  z_i = noise share + sum of f shares, sent to the
//                   aggregator, which reconstructs and divides by |E|
//
// Phases 2 and 3 are independent and run in parallel by default.

#ifndef UMPC_PROTOCOL_HPP_
#define UMPC_PROTOCOL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "umpc/dataset.hpp"
#include "umpc/fixedpoint.hpp"
#include "umpc/kernels.hpp"
#include "umpc/noise.hpp"
#include "umpc/rng.hpp"
#include "umpc/sampling.hpp"
#include "umpc/secretsharing.hpp"

namespace umpc {

struct PhaseCost {
  std::uint64_t bits = 0;
  std::uint32_t rounds = 0;
};

struct CostLedger {
  PhaseCost sharing;
  PhaseCost computing;
  PhaseCost noise;
  PhaseCost aggregation;
  bool parallel = true;

  std::uint64_t total_bits() const {
    return sharing.bits + computing.bits + noise.bits + aggregation.bits;
  }
  std::uint32_t total_rounds() const;
};

// What one simulated party holds. Slot s refers to incident edge edges[s].
struct PartyState {
  PartyId index = 0;
  std::vector<std::uint64_t> input;  // raw residues, one per component
  std::vector<std::uint32_t> edges;  // incident edge ids, ascending
  // Per slot: k * components shares of the edge's inputs, argument-major.
  std::vector<std::uint64_t> received;
  std::vector<std::uint64_t> f_shares;  // per slot
  std::uint64_t noise_share = 0;
  std::uint64_t z = 0;
};

struct ProtocolOptions {
  bool parallel = true;
  bool debug_checks = false;
  PartyId aggregator = 0;
};

struct EstimateResult {
  double released = 0.0;
  double noiseless = 0.0;  // debug channel
  std::int64_t eta_grid = 0;
  double noise_sensitivity = 0.0;  // delta_max * delta_f handed to the noise
  CostLedger ledger;
  std::uint64_t seed = 0;
  std::size_t num_edges = 0;
  std::uint32_t delta_g_max = 0;
  std::uint32_t min_degree = 0;
};

// Party states with encoded inputs and the incident-edge index built from g.
std::vector<PartyState> make_parties(const Dataset& data, const Hypergraph& g,
                                     const FpConfig& cfg);

// Phase 1. For every edge and member, the member's input components are
// (k,k)-shared across the edge: |E| * k(k-1) * ell bits per component, one
// round.
PhaseCost sharing_phase(std::vector<PartyState>& parties, const Hypergraph& g,
                        const FpConfig& cfg, Rng& rng);

// Ideal kernel functionality for edge `e`: reconstructs the members' inputs
// from their received shares, evaluates the kernel in fixed point and
// returns fresh (k,k) shares of the result to the edge members.
Sharing f_f_ideal(std::size_t e, const Hypergraph& g,
                  const std::vector<PartyState>& parties,
                  const KernelSpec& kernel, const FpConfig& cfg, Rng& rng);

// Phase 2 over all edges: |E| * C^C_f bits, C^R_f rounds.
PhaseCost computing_phase(std::vector<PartyState>& parties,
                          const Hypergraph& g, const KernelSpec& kernel,
                          const FpConfig& cfg, Rng& rng);

struct AggregationResult {
  double released = 0.0;
  std::uint64_t sum_raw = 0;
  PhaseCost cost;
};

// Phase 4: n messages of ell bits to the aggregator, one round.
AggregationResult aggregation_phase(const std::vector<PartyState>& parties,
                                    std::size_t num_edges, const FpConfig& cfg,
                                    PartyId aggregator = 0);

// delta_max * delta_f / |E|: sensitivity of the released statistic.
double sensitivity_bound(const Hypergraph& g, double delta_f);

// Full run. The noise sensitivity is always delta_max * delta_f; the
// `sensitivity` field of `noise` is ignored.
EstimateResult run_umpc(const Dataset& data, const Hypergraph& g,
                        const KernelSpec& kernel, const NoiseSpec& noise,
                        const FpConfig& cfg, Rng& rng,
                        const ProtocolOptions& opts = {});

// Same, seeding a fresh generator and recording the seed.
EstimateResult run_umpc(const Dataset& data, const Hypergraph& g,
                        const KernelSpec& kernel, const NoiseSpec& noise,
                        const FpConfig& cfg, std::uint64_t seed,
                        const ProtocolOptions& opts = {});

}  // namespace umpc

#endif  // UMPC_PROTOCOL_HPP_
