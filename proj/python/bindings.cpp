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


#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "umpc/baselines.hpp"
#include "umpc/cli.hpp"
#include "umpc/error.hpp"
#include "umpc/evaluation.hpp"
#include "umpc/kernels.hpp"
#include "umpc/noise.hpp"
#include "umpc/protocol.hpp"
#include "umpc/sampling.hpp"
#include "umpc/secretsharing.hpp"

namespace py = pybind11;
using namespace umpc;

namespace {

// Accepts a 1-D array (one value per party) or a 2-D array (rows x
// components).
Dataset to_dataset(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() == 1) {
    return Dataset::from_scalars({a.data(), a.data() + a.shape(0)});
  }
  if (a.ndim() != 2) throw UsageError("data must be 1-D or 2-D");
  return Dataset(static_cast<std::size_t>(a.shape(1)),
                 {a.data(), a.data() + a.size()});
}

FpConfig fp_of(unsigned ell, unsigned c) {
  FpConfig fp{ell, c};
  fp.validate();
  return fp;
}

Hypergraph to_graph(std::uint32_t n, const std::vector<std::vector<Vertex>>& edges) {
  const std::uint32_t k = edges.empty() ? 2 : static_cast<std::uint32_t>(edges[0].size());
  std::vector<Vertex> flat;
  flat.reserve(edges.size() * k);
  for (const auto& e : edges) flat.insert(flat.end(), e.begin(), e.end());
  return Hypergraph(n, k, std::move(flat));
}

std::vector<std::vector<Vertex>> from_graph(const Hypergraph& g) {
  std::vector<std::vector<Vertex>> out;
  out.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto e = g.edge(i);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

py::dict result_dict(const EstimateResult& r) {
  py::dict d;
  d["released"] = r.released;
  d["noiseless"] = r.noiseless;
  d["eta_grid"] = r.eta_grid;
  d["noise_sensitivity"] = r.noise_sensitivity;
  d["bits_total"] = r.ledger.total_bits();
  d["rounds_total"] = r.ledger.total_rounds();
  d["bits"] = py::dict(py::arg("sharing") = r.ledger.sharing.bits,
                       py::arg("computing") = r.ledger.computing.bits,
                       py::arg("noise") = r.ledger.noise.bits,
                       py::arg("aggregation") = r.ledger.aggregation.bits);
  d["num_edges"] = r.num_edges;
  d["delta_g_max"] = r.delta_g_max;
  d["seed"] = r.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_umpc, m) {
  m.doc() = "Secure multi-party U-statistics with distributed noise";

  auto base = py::register_exception<Error>(m, "UmpcError");
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  auto range = py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<WrapRiskError>(m, "WrapRiskError", range.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SamplingFailure>(m, "SamplingFailure", base.ptr());
  py::register_exception<ScaleError>(m, "ScaleError", base.ptr());
  py::register_exception<UnsupportedKernel>(m, "UnsupportedKernel", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def(
      "encode",
      [](double q, unsigned ell, unsigned c) { return encode(q, fp_of(ell, c)).raw(); },
      py::arg("q"), py::arg("ell") = 40, py::arg("c") = 14,
      "Ring element (raw residue) of the nearest grid point.");
  m.def(
      "decode",
      [](std::uint64_t raw, unsigned ell, unsigned c) {
        return decode(FpValue(raw, fp_of(ell, c)));
      },
      py::arg("raw"), py::arg("ell") = 40, py::arg("c") = 14);

  m.def(
      "share",
      [](double q, std::size_t parties, std::uint64_t seed, unsigned ell, unsigned c) {
        const FpConfig fp = fp_of(ell, c);
        if (parties == 0) throw UsageError("parties must be positive");
        Rng rng(seed);
        std::vector<std::uint64_t> out(parties);
        split_raw(encode(q, fp).raw(), fp, rng, out);
        return out;
      },
      py::arg("q"), py::arg("parties"), py::arg("seed") = 1, py::arg("ell") = 40,
      py::arg("c") = 14, "Additive shares of q over Z_{2^ell}.");
  m.def(
      "reconstruct",
      [](const std::vector<std::uint64_t>& shares, unsigned ell, unsigned c) {
        const FpConfig fp = fp_of(ell, c);
        std::uint64_t sum = 0;
        for (auto s : shares) sum += s;
        return decode(FpValue(sum, fp));
      },
      py::arg("shares"), py::arg("ell") = 40, py::arg("c") = 14);

  m.def(
      "sample_graph",
      [](const std::string& sampler, std::uint64_t edges, std::uint32_t n,
         std::uint32_t k, std::uint64_t seed) {
        Rng rng(seed);
        return from_graph(sample_graph(parse_sampler(sampler), edges, k, n, rng));
      },
      py::arg("sampler"), py::arg("edges"), py::arg("n"), py::arg("k") = 2,
      py::arg("seed") = 1, "Edge list as sorted vertex tuples.");
  m.def(
      "max_degree",
      [](std::uint32_t n, const std::vector<std::vector<Vertex>>& edges) {
        return degree_profile(to_graph(n, edges)).max_degree;
      },
      py::arg("n"), py::arg("edges"));

  m.def("kernels", &builtin_kernel_names);

  m.def(
      "complete_ustat",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
         const std::string& kernel) {
        return complete_ustat(to_dataset(data), builtin_kernel(kernel));
      },
      py::arg("data"), py::arg("kernel"));
  m.def(
      "incomplete_ustat",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
         const std::vector<std::vector<Vertex>>& edges, const std::string& kernel) {
        const Dataset d = to_dataset(data);
        return incomplete_ustat(d, to_graph(static_cast<std::uint32_t>(d.size()), edges),
                                builtin_kernel(kernel));
      },
      py::arg("data"), py::arg("edges"), py::arg("kernel"));

  m.def(
      "run",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
         const std::string& kernel, const std::vector<std::vector<Vertex>>& edges,
         double epsilon, const std::string& noise_mode, double delta,
         std::uint64_t seed, unsigned ell, unsigned c, bool parallel) {
        const FpConfig fp = fp_of(ell, c);
        const Dataset d = to_dataset(data);
        NoiseSpec ns;
        ns.epsilon = epsilon;
        ns.delta = delta;
        ns.mode = parse_noise_mode(noise_mode);
        ProtocolOptions opts;
        opts.parallel = parallel;
        const EstimateResult r =
            run_umpc(d, to_graph(static_cast<std::uint32_t>(d.size()), edges),
                     builtin_kernel(kernel, fp), ns, fp, seed, opts);
        return result_dict(r);
      },
      py::arg("data"), py::arg("kernel"), py::arg("edges"),
      py::arg("epsilon") = 1.0, py::arg("noise_mode") = "dlap_full",
      py::arg("delta") = 0.0, py::arg("seed") = 1, py::arg("ell") = 40,
      py::arg("c") = 14, py::arg("parallel") = true,
      "Full simulated protocol run. epsilon=inf disables noise.");

  m.def(
      "bell_estimate",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
         const std::string& kernel, std::uint32_t t, double epsilon,
         std::uint64_t seed) {
        Rng rng(seed);
        const BellResult r = bell_estimate(to_dataset(data), builtin_kernel(kernel), t,
                                           epsilon, rng);
        return py::dict(py::arg("estimate") = r.estimate,
                        py::arg("discretized") = r.discretized,
                        py::arg("beta") = r.beta, py::arg("bins") = r.bins);
      },
      py::arg("data"), py::arg("kernel"), py::arg("t") = 64, py::arg("epsilon") = 1.0,
      py::arg("seed") = 1, "Local-DP randomized-response baseline.");

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process: (exit, stdout, stderr).");
}
