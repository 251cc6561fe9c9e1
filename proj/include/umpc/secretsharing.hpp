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

// (p,p)-threshold additive secret sharing over Z_{2^ell}.

#ifndef UMPC_SECRETSHARING_HPP_
#define UMPC_SECRETSHARING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "umpc/fixedpoint.hpp"
#include "umpc/rng.hpp"

namespace umpc {

using PartyId = std::uint32_t;

// Positional sharing: shares()[j] is held by parties()[j]. The threshold is
// always the number of parties.
class Sharing {
 public:
  Sharing() = default;
  // Throws UsageError on length mismatch, empty or duplicate party lists.
  Sharing(std::vector<PartyId> parties, std::vector<std::uint64_t> shares,
          const FpConfig& cfg);

  const std::vector<PartyId>& parties() const { return parties_; }
  const std::vector<std::uint64_t>& shares() const { return shares_; }
  const FpConfig& config() const { return cfg_; }
  std::size_t size() const { return shares_.size(); }
  std::size_t threshold() const { return shares_.size(); }

  // Share held by `party`; throws UsageError when it holds none.
  std::uint64_t share_of(PartyId party) const;

 private:
  std::vector<PartyId> parties_;
  std::vector<std::uint64_t> shares_;
  FpConfig cfg_{};
};

// Splits `secret_raw` into shares.size() residues: all but the last are
// uniform on Z_{2^ell}, the last completes the sum. The hot-path primitive
// behind share().
void split_raw(std::uint64_t secret_raw, const FpConfig& cfg, Rng& rng,
               std::span<std::uint64_t> shares);

Sharing share(const FpValue& secret, std::span<const PartyId> parties,
              Rng& rng);
FpValue reconstruct(const Sharing& s);

Sharing add_local(const Sharing& a, const Sharing& b);
Sharing sub_local(const Sharing& a, const Sharing& b);
Sharing scale_local(const Sharing& a, std::uint64_t constant);
// Adds a public constant; only the first party adjusts its share.
Sharing add_public(const Sharing& a, std::uint64_t constant);

// Parties 0..n-1.
std::vector<PartyId> all_parties(std::size_t n);

}  // namespace umpc

#endif  // UMPC_SECRETSHARING_HPP_
