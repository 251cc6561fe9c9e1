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

#include "umpc/kernels.hpp"

#include <cmath>
#include <limits>

#include "umpc/error.hpp"

namespace umpc {

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

std::string row_text(Row r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

void check_unit(Row r, const char* kernel) {
  for (double v : r) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError(std::string(kernel) + ": input " + row_text(r) +
                        " outside [0,1]");
    }
  }
}

void check_label(double v, const char* kernel) {
  if (!std::isfinite(v) || v != std::floor(v)) {
    throw DomainError(std::string(kernel) + ": label " + std::to_string(v) +
                      " is not an integer");
  }
}

// Each secure comparison or product is charged 2*ell bits and ell local
// operations per party.
void set_costs(KernelSpec& k, unsigned ell, unsigned comparisons,
               unsigned rounds) {
  k.comm_bits_per_eval = std::uint64_t{2} * ell * comparisons;
  k.rounds_per_eval = rounds;
  k.ops_per_party_per_eval = std::uint64_t{ell} * comparisons;
}

}  // namespace

void KernelSpec::validate() const {
  if (arity == 0) throw UsageError("kernel " + name + ": arity 0");
  if (components == 0) throw UsageError("kernel " + name + ": 0 components");
  if (!(hi >= lo)) throw UsageError("kernel " + name + ": hi < lo");
  if (!(delta_f >= 0.0) || delta_f > hi - lo) {
    throw UsageError("kernel " + name + ": delta_f must lie in [0, hi-lo]");
  }
  if (!fn) throw UsageError("kernel " + name + ": no evaluation function");
}

double kendall_pair(Row a, Row b) {
  return static_cast<double>(sign(a[0] - b[0]) * sign(a[1] - b[1]));
}

double gini_pair(double x, double y) { return std::fabs(x - y); }

double dup_pair(double x, double y) { return x == y ? 1.0 : 0.0; }

double auc_pair(Row a, Row b) {
  if (a[1] == b[1]) return 0.0;
  const Row& pos = a[1] > 0 ? a : b;
  const Row& neg = a[1] > 0 ? b : a;
  return pos[0] > neg[0] ? 1.0 : 0.0;
}

double rand_pair(Row a, Row b) {
  return ((a[0] == b[0]) == (a[1] == b[1])) ? 1.0 : 0.0;
}

KernelSpec builtin_kernel(const std::string& name, const FpConfig& cfg) {
  KernelSpec k;
  k.name = name;
  k.arity = 2;
  const double inf = std::numeric_limits<double>::infinity();
  if (name == "kendall") {
    k.components = 2;
    k.delta_f = 2.0;
    k.lo = -1.0;
    k.hi = 1.0;
    k.lipschitz = inf;
    set_costs(k, cfg.ell, 3, 2);
    k.fn = [](std::span<const Row> r) { return kendall_pair(r[0], r[1]); };
    k.check_domain = [](Row r) { check_unit(r, "kendall"); };
  } else if (name == "gini") {
    k.components = 1;
    k.lipschitz = 1.0;
    set_costs(k, cfg.ell, 3, 2);
    k.fn = [](std::span<const Row> r) { return gini_pair(r[0][0], r[1][0]); };
    k.check_domain = [](Row r) { check_unit(r, "gini"); };
  } else if (name == "dup") {
    k.components = 1;
    k.lipschitz = inf;
    set_costs(k, cfg.ell, 1, 1);
    k.fn = [](std::span<const Row> r) { return dup_pair(r[0][0], r[1][0]); };
    k.check_domain = [](Row r) {
      if (!std::isfinite(r[0])) throw DomainError("dup: non-finite input");
    };
  } else if (name == "auc") {
    k.components = 2;
    k.lipschitz = inf;
    set_costs(k, cfg.ell, 4, 2);
    k.fn = [](std::span<const Row> r) { return auc_pair(r[0], r[1]); };
    k.check_domain = [](Row r) {
      if (!(r[0] >= 0.0 && r[0] <= 1.0)) {
        throw DomainError("auc: score " + std::to_string(r[0]) +
                          " outside [0,1]");
      }
      if (r[1] != 1.0 && r[1] != -1.0) {
        throw DomainError("auc: label " + std::to_string(r[1]) +
                          " is not -1 or +1");
      }
    };
  } else if (name == "rand") {
    k.components = 2;
    k.lipschitz = inf;
    set_costs(k, cfg.ell, 3, 2);
    k.fn = [](std::span<const Row> r) { return rand_pair(r[0], r[1]); };
    k.check_domain = [](Row r) {
      check_label(r[0], "rand");
      check_label(r[1], "rand");
    };
  } else {
    throw UsageError("unknown kernel '" + name +
                     "' (expected kendall|gini|dup|auc|rand)");
  }
  return k;
}

std::vector<std::string> builtin_kernel_names() {
  return {"kendall", "gini", "dup", "auc", "rand"};
}

KernelSpec custom_kernel(std::string name, std::uint32_t arity,
                         std::size_t components, double delta_f, double lo,
                         double hi, KernelSpec::Fn fn,
                         KernelSpec::DomainCheck check) {
  KernelSpec k;
  k.name = std::move(name);
  k.arity = arity;
  k.components = components;
  k.delta_f = delta_f;
  k.lo = lo;
  k.hi = hi;
  k.lipschitz = std::numeric_limits<double>::infinity();
  k.fn = std::move(fn);
  k.check_domain = std::move(check);
  k.validate();
  return k;
}

double eval_real(const KernelSpec& spec, std::span<const Row> rows) {
  if (rows.size() != spec.arity) {
    throw UsageError("kernel " + spec.name + ": expected " +
                     std::to_string(spec.arity) + " arguments, got " +
                     std::to_string(rows.size()));
  }
  for (Row r : rows) {
    if (r.size() != spec.components) {
      throw UsageError("kernel " + spec.name + ": argument has " +
                       std::to_string(r.size()) + " components, expected " +
                       std::to_string(spec.components));
    }
    if (spec.check_domain) spec.check_domain(r);
  }
  return spec.fn(rows);
}

FpValue eval_fp(const KernelSpec& spec,
                std::span<const std::vector<FpValue>> inputs) {
  if (inputs.empty()) throw UsageError("eval_fp: no inputs");
  const FpConfig cfg = inputs.front().front().config();
  std::vector<double> flat;
  flat.reserve(inputs.size() * spec.components);
  for (const auto& arg : inputs) {
    for (const FpValue& v : arg) flat.push_back(decode(v));
  }
  std::vector<Row> rows;
  std::size_t off = 0;
  for (const auto& arg : inputs) {
    rows.emplace_back(flat.data() + off, arg.size());
    off += arg.size();
  }
  return encode(eval_real(spec, rows), cfg);
}

void check_dataset(const KernelSpec& spec, const Dataset& d) {
  if (d.components() != spec.components) {
    throw UsageError("kernel " + spec.name + " needs " +
                     std::to_string(spec.components) +
                     " components per row, dataset has " +
                     std::to_string(d.components()));
  }
  if (!spec.check_domain) return;
  for (std::size_t i = 0; i < d.size(); ++i) {
    try {
      spec.check_domain(d.row(i));
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at row " +
                        std::to_string(i));
    }
  }
}

double auc_normalization_factor(const Dataset& d) {
  if (d.components() != 2) {
    throw UsageError("auc_normalization_factor: rows must be (score, label)");
  }
  double pos = 0, neg = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (d.row(i)[1] > 0 ? pos : neg) += 1.0;
  }
  if (pos == 0 || neg == 0) {
    throw UsageError("auc_normalization_factor: need both label classes");
  }
  const double n = static_cast<double>(d.size());
  return n * (n - 1) / 2.0 / (pos * neg);
}

}  // namespace umpc
