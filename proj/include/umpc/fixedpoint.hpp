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

// Fixed-precision values as residues of the ring Z_{2^ell}.
//
// A rational q is stored as the residue of round(q * 2^c) modulo 2^ell. The
// upper half of the ring {2^(ell-1), ..., 2^ell - 1} encodes negative values
// (two's complement of width ell), so decode(raw) = signed(raw) * 2^-c.

#ifndef UMPC_FIXEDPOINT_HPP_
#define UMPC_FIXEDPOINT_HPP_

#include <cstdint>
#include <string>

namespace umpc {

struct FpConfig {
  unsigned ell = 40;  // ring bit width
  unsigned c = 14;    // fractional bits, h = 2^-c

  // Throws UsageError unless 0 < ell <= 63 and c <= ell.
  void validate() const;

  std::uint64_t mask() const { return (std::uint64_t{1} << ell) - 1; }
  std::uint64_t half() const { return std::uint64_t{1} << (ell - 1); }
  double h() const;
  // Exclusive bound on |q| accepted by encode: 2^(ell-c-1).
  double max_abs() const;

  friend bool operator==(const FpConfig&, const FpConfig&) = default;
};

class FpValue {
 public:
  FpValue() = default;
  // raw is reduced modulo 2^ell.
  FpValue(std::uint64_t raw, const FpConfig& cfg)
      : raw_(raw & cfg.mask()), cfg_(cfg) {}

  std::uint64_t raw() const { return raw_; }
  const FpConfig& config() const { return cfg_; }
  // Signed integer reading of raw, in [-2^(ell-1), 2^(ell-1)).
  std::int64_t signed_value() const;

  friend bool operator==(const FpValue&, const FpValue&) = default;

 private:
  std::uint64_t raw_ = 0;
  FpConfig cfg_{};
};

std::int64_t to_signed(std::uint64_t raw, const FpConfig& cfg);
// Residue of v modulo 2^ell.
std::uint64_t from_signed(std::int64_t v, const FpConfig& cfg);

// Rounds half away from zero. Throws RangeError when |q| >= 2^(ell-c-1) or q
// is not finite.
FpValue encode(double q, const FpConfig& cfg);
double decode(const FpValue& v);
// decode(encode(q)): the grid point a party actually holds for input q.
double quantize(double q, const FpConfig& cfg);

FpValue ring_add(const FpValue& a, const FpValue& b);
FpValue ring_sub(const FpValue& a, const FpValue& b);
FpValue ring_neg(const FpValue& a);
// Multiplication by a public ring constant.
FpValue ring_mul(const FpValue& a, std::uint64_t constant);

// Plaintext range check for debug runs: true when `grid_value` (an integer
// in grid units) is representable without wrap-around.
bool fits_without_wrap(std::int64_t grid_value, const FpConfig& cfg);

std::string describe(const FpConfig& cfg);

}  // namespace umpc

#endif  // UMPC_FIXEDPOINT_HPP_
