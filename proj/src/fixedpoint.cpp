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

#include "umpc/fixedpoint.hpp"

#include <cmath>
#include <sstream>

#include "umpc/error.hpp"

namespace umpc {

void FpConfig::validate() const {
  if (ell == 0 || ell > 63) {
    throw UsageError("fixed point: ell must be in [1, 63], got " +
                     std::to_string(ell));
  }
  if (c > ell) {
    throw UsageError("fixed point: c must be <= ell, got c=" +
                     std::to_string(c) + " ell=" + std::to_string(ell));
  }
}

double FpConfig::h() const { return std::ldexp(1.0, -static_cast<int>(c)); }

double FpConfig::max_abs() const {
  return std::ldexp(1.0, static_cast<int>(ell) - static_cast<int>(c) - 1);
}

std::int64_t to_signed(std::uint64_t raw, const FpConfig& cfg) {
  raw &= cfg.mask();
  if (raw >= cfg.half()) {
    return static_cast<std::int64_t>(raw) -
           static_cast<std::int64_t>(std::uint64_t{1} << cfg.ell);
  }
  return static_cast<std::int64_t>(raw);
}

std::uint64_t from_signed(std::int64_t v, const FpConfig& cfg) {
  return static_cast<std::uint64_t>(v) & cfg.mask();
}

std::int64_t FpValue::signed_value() const { return to_signed(raw_, cfg_); }

FpValue encode(double q, const FpConfig& cfg) {
  cfg.validate();
  const double bound = cfg.max_abs();
  if (!std::isfinite(q) || std::fabs(q) >= bound) {
    std::ostringstream os;
    os << "fixed point: " << q << " outside representable interval (-"
       << bound << ", " << bound << ") for " << describe(cfg);
    throw RangeError(os.str());
  }
  // std::round is half-away-from-zero.
  const double scaled = std::round(std::ldexp(q, static_cast<int>(cfg.c)));
  const auto lo = -static_cast<double>(cfg.half());
  const auto hi = static_cast<double>(cfg.half()) - 1.0;
  if (scaled < lo || scaled > hi) {
    std::ostringstream os;
    os << "fixed point: " << q << " rounds outside the ring for "
       << describe(cfg);
    throw RangeError(os.str());
  }
  return FpValue(from_signed(static_cast<std::int64_t>(scaled), cfg), cfg);
}

double decode(const FpValue& v) {
  return std::ldexp(static_cast<double>(v.signed_value()),
                    -static_cast<int>(v.config().c));
}

double quantize(double q, const FpConfig& cfg) { return decode(encode(q, cfg)); }

namespace {

void require_same(const FpValue& a, const FpValue& b) {
  if (!(a.config() == b.config())) {
    throw UsageError("fixed point: operands use different configurations (" +
                     describe(a.config()) + " vs " + describe(b.config()) +
                     ")");
  }
}

}  // namespace

FpValue ring_add(const FpValue& a, const FpValue& b) {
  require_same(a, b);
  return FpValue(a.raw() + b.raw(), a.config());
}

FpValue ring_sub(const FpValue& a, const FpValue& b) {
  require_same(a, b);
  return FpValue(a.raw() - b.raw(), a.config());
}

FpValue ring_neg(const FpValue& a) { return FpValue(0 - a.raw(), a.config()); }

FpValue ring_mul(const FpValue& a, std::uint64_t constant) {
  return FpValue(a.raw() * constant, a.config());
}

bool fits_without_wrap(std::int64_t grid_value, const FpConfig& cfg) {
  const auto half = static_cast<std::int64_t>(cfg.half());
  return grid_value >= -half && grid_value < half;
}

std::string describe(const FpConfig& cfg) {
  return "ell=" + std::to_string(cfg.ell) + " c=" + std::to_string(cfg.c);
}

}  // namespace umpc
