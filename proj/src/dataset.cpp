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

#include "umpc/dataset.hpp"

#include "umpc/error.hpp"

namespace umpc {

Dataset::Dataset(std::size_t components, std::vector<double> values)
    : components_(components), values_(std::move(values)) {
  if (components_ == 0) throw UsageError("dataset: zero components per row");
  if (values_.size() % components_ != 0) {
    throw UsageError("dataset: value count is not a multiple of components");
  }
}

Dataset quantized(const Dataset& d, const FpConfig& cfg) {
  std::vector<double> v(d.values());
  for (double& x : v) x = quantize(x, cfg);
  Dataset out(d.components(), std::move(v));
  out.column_names = d.column_names;
  return out;
}

Dataset gen_synthetic(std::size_t n, SyntheticKind kind, Rng& rng,
                      std::uint32_t categories) {
  switch (kind) {
    case SyntheticKind::kUniform01: {
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform01();
      return Dataset(1, std::move(v));
    }
    case SyntheticKind::kUniform01Pairs: {
      std::vector<double> v(2 * n);
      for (double& x : v) x = rng.uniform01();
      return Dataset(2, std::move(v));
    }
    case SyntheticKind::kCategorical: {
      if (categories == 0) throw UsageError("gen_synthetic: zero categories");
      std::vector<double> v(n);
      for (double& x : v) x = static_cast<double>(rng.uniform_below(categories));
      return Dataset(1, std::move(v));
    }
  }
  throw UsageError("gen_synthetic: unknown kind");
}

SyntheticKind parse_synthetic_kind(const std::string& name) {
  if (name == "uniform01") return SyntheticKind::kUniform01;
  if (name == "uniform01_pairs") return SyntheticKind::kUniform01Pairs;
  if (name == "categorical") return SyntheticKind::kCategorical;
  throw UsageError("unknown synthetic kind '" + name +
                   "' (expected uniform01|uniform01_pairs|categorical)");
}

}  // namespace umpc
