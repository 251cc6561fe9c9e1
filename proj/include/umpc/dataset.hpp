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

#ifndef UMPC_DATASET_HPP_
#define UMPC_DATASET_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "umpc/fixedpoint.hpp"
#include "umpc/rng.hpp"

namespace umpc {

// One row per party; every row has `components()` real values.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t components, std::vector<double> values);

  static Dataset from_scalars(std::vector<double> xs) { return {1, std::move(xs)}; }

  std::size_t components() const { return components_; }
  std::size_t size() const {
    return components_ == 0 ? 0 : values_.size() / components_;
  }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * components_, components_};
  }
  std::span<double> mutable_row(std::size_t i) {
    return {values_.data() + i * components_, components_};
  }
  const std::vector<double>& values() const { return values_; }

  // Rows dropped during ingestion (missing values); informational.
  std::size_t dropped_rows = 0;
  std::vector<std::string> column_names;
  std::vector<std::string> warnings;

 private:
  std::size_t components_ = 1;
  std::vector<double> values_;
};

// Every value replaced by its fixed-point grid point.
Dataset quantized(const Dataset& d, const FpConfig& cfg);

enum class SyntheticKind { kUniform01, kUniform01Pairs, kCategorical };

// uniform01: one U[0,1) value per row; uniform01_pairs: two; categorical:
// one integer label uniform on {0, ..., categories-1}.
Dataset gen_synthetic(std::size_t n, SyntheticKind kind, Rng& rng,
                      std::uint32_t categories = 12);

SyntheticKind parse_synthetic_kind(const std::string& name);

}  // namespace umpc

#endif  // UMPC_DATASET_HPP_
