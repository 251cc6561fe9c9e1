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

#ifndef UMPC_RNG_HPP_
#define UMPC_RNG_HPP_

#include <cstdint>
#include <limits>
#include <random>

namespace umpc {

// Seeded generator shared by every randomized operation. Integer and uniform
// draws are computed from raw mt19937_64 output so that sampling is
// bit-reproducible across standard libraries; continuous distributions that
// go through <random> (gamma, Poisson, normal) are reproducible per build.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound). bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    // Lemire's multiply-and-reject.
    std::uint64_t x = engine_();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [0, 2^bits), bits <= 64.
  std::uint64_t bits(unsigned bits) {
    const std::uint64_t x = engine_();
    return bits >= 64 ? x : (x & ((std::uint64_t{1} << bits) - 1));
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1).
  double uniform_open01() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Stream derivation for independent sub-generators (splitmix64 finalizer).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace umpc

#endif  // UMPC_RNG_HPP_
