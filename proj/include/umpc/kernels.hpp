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

// Symmetric kernels evaluated on the k-tuples of a hypergraph.

#ifndef UMPC_KERNELS_HPP_
#define UMPC_KERNELS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "umpc/dataset.hpp"
#include "umpc/fixedpoint.hpp"

namespace umpc {

using Row = std::span<const double>;

struct KernelSpec {
  using Fn = std::function<double(std::span<const Row>)>;
  // Throws DomainError when a single input row is outside the domain.
  using DomainCheck = std::function<void(Row)>;

  std::string name;
  std::uint32_t arity = 2;
  std::size_t components = 1;  // scalars per input row
  double delta_f = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  // Used by the analytic error models only; +inf for discontinuous kernels.
  double lipschitz = 1.0;

  // Charged per evaluation by the ideal kernel functionality.
  std::uint64_t comm_bits_per_eval = 0;
  std::uint32_t rounds_per_eval = 0;
  std::uint64_t ops_per_party_per_eval = 0;

  Fn fn;
  DomainCheck check_domain;

  // Throws UsageError on inconsistent fields.
  void validate() const;
};

double kendall_pair(Row a, Row b);
double gini_pair(double x, double y);
double dup_pair(double x, double y);
// Rows are (score, label) with label in {-1, +1}.
double auc_pair(Row a, Row b);
// Rows are (label under clustering 1, label under clustering 2). Returns 1
// when both clusterings agree on whether the two points share a cluster.
double rand_pair(Row a, Row b);

// Built-in kernel by name: kendall, gini, dup, auc, rand. Cost constants
// scale with cfg.ell. Throws UsageError for unknown names.
KernelSpec builtin_kernel(const std::string& name, const FpConfig& cfg = {});
std::vector<std::string> builtin_kernel_names();

// Hook for caller-defined kernels of any arity.
KernelSpec custom_kernel(std::string name, std::uint32_t arity,
                         std::size_t components, double delta_f, double lo,
                         double hi, KernelSpec::Fn fn,
                         KernelSpec::DomainCheck check = {});

// Real-valued evaluation on rows. Checks the domain of every row.
double eval_real(const KernelSpec& spec, std::span<const Row> rows);

// decode, apply, re-encode. inputs[j] holds the components of argument j.
FpValue eval_fp(const KernelSpec& spec,
                std::span<const std::vector<FpValue>> inputs);

// Every row of the dataset against the kernel domain.
void check_dataset(const KernelSpec& spec, const Dataset& d);

// Ratio C(n,2) / (n_pos * n_neg) converting the pairwise average of
// auc_pair into the usual AUC normalization.
double auc_normalization_factor(const Dataset& d);

}  // namespace umpc

#endif  // UMPC_KERNELS_HPP_
