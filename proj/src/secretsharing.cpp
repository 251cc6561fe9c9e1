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

#include "umpc/secretsharing.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "umpc/error.hpp"

namespace umpc {

namespace {

void check_parties(std::span<const PartyId> parties) {
  if (parties.empty()) {
    throw UsageError("secret sharing: empty party list");
  }
  std::vector<PartyId> sorted(parties.begin(), parties.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("secret sharing: duplicate party index");
  }
}

void check_compatible(const Sharing& a, const Sharing& b) {
  if (a.parties() != b.parties()) {
    throw UsageError("secret sharing: party lists differ");
  }
  if (!(a.config() == b.config())) {
    throw UsageError("secret sharing: fixed-point configurations differ");
  }
}

}  // namespace

Sharing::Sharing(std::vector<PartyId> parties,
                 std::vector<std::uint64_t> shares, const FpConfig& cfg)
    : parties_(std::move(parties)), shares_(std::move(shares)), cfg_(cfg) {
  if (parties_.size() != shares_.size()) {
    throw UsageError("secret sharing: " + std::to_string(parties_.size()) +
                     " parties but " + std::to_string(shares_.size()) +
                     " shares");
  }
  check_parties(parties_);
  for (auto& s : shares_) s &= cfg_.mask();
}

std::uint64_t Sharing::share_of(PartyId party) const {
  const auto it = std::find(parties_.begin(), parties_.end(), party);
  if (it == parties_.end()) {
    throw UsageError("secret sharing: party " + std::to_string(party) +
                     " holds no share");
  }
  return shares_[static_cast<std::size_t>(it - parties_.begin())];
}

void split_raw(std::uint64_t secret_raw, const FpConfig& cfg, Rng& rng,
               std::span<std::uint64_t> shares) {
  const std::uint64_t mask = cfg.mask();
  std::uint64_t acc = 0;
  const std::size_t last = shares.size() - 1;
  for (std::size_t j = 0; j < last; ++j) {
    shares[j] = rng.next_u64() & mask;
    acc += shares[j];
  }
  shares[last] = (secret_raw - acc) & mask;
}

Sharing share(const FpValue& secret, std::span<const PartyId> parties,
              Rng& rng) {
  check_parties(parties);
  std::vector<std::uint64_t> shares(parties.size());
  split_raw(secret.raw(), secret.config(), rng, shares);
  return Sharing(std::vector<PartyId>(parties.begin(), parties.end()),
                 std::move(shares), secret.config());
}

FpValue reconstruct(const Sharing& s) {
  const std::uint64_t sum = std::accumulate(
      s.shares().begin(), s.shares().end(), std::uint64_t{0});
  return FpValue(sum, s.config());
}

Sharing add_local(const Sharing& a, const Sharing& b) {
  check_compatible(a, b);
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = a.shares()[j] + b.shares()[j];
  }
  return Sharing(a.parties(), std::move(out), a.config());
}

Sharing sub_local(const Sharing& a, const Sharing& b) {
  check_compatible(a, b);
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = a.shares()[j] - b.shares()[j];
  }
  return Sharing(a.parties(), std::move(out), a.config());
}

Sharing scale_local(const Sharing& a, std::uint64_t constant) {
  std::vector<std::uint64_t> out(a.shares());
  for (auto& s : out) s *= constant;
  return Sharing(a.parties(), std::move(out), a.config());
}

Sharing add_public(const Sharing& a, std::uint64_t constant) {
  std::vector<std::uint64_t> out(a.shares());
  out.front() += constant;
  return Sharing(a.parties(), std::move(out), a.config());
}

std::vector<PartyId> all_parties(std::size_t n) {
  std::vector<PartyId> out(n);
  std::iota(out.begin(), out.end(), PartyId{0});
  return out;
}

}  // namespace umpc
