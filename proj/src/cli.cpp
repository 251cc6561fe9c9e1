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

#include "umpc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "umpc/baselines.hpp"
#include "umpc/csv.hpp"
#include "umpc/error.hpp"
#include "umpc/evaluation.hpp"
#include "umpc/kernels.hpp"
#include "umpc/noise.hpp"
#include "umpc/protocol.hpp"
#include "umpc/sampling.hpp"

namespace umpc {

namespace {

constexpr std::uint64_t kDataStream = 0xda7a;

const std::set<std::string> kNonSemantic = {"--help", "--config", "--out",
                                            "--format"};

void add_data_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--dataset", c.dataset, "CSV file, one row per party");
  sub->add_option("--columns", c.columns,
                  "Selected columns, e.g. x or score,label:raw or a:cat");
  sub->add_option("--synthetic", c.synthetic,
                  "Synthetic data when no dataset: uniform01|uniform01_pairs|"
                  "categorical");
  sub->add_option("--n", c.n, "Synthetic row count");
  sub->add_option("--categories", c.categories, "Synthetic category count");
}

void add_kernel_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--kernel", c.kernel, "kendall|gini|dup|auc|rand");
  sub->add_option("--comm-bits-f", c.comm_bits_f,
                  "Override bits charged per kernel evaluation");
  sub->add_option("--rounds-f", c.rounds_f,
                  "Override rounds charged for the kernel evaluations");
}

void add_noise_options(CLI::App* sub, RunConfig& c, bool with_mode_name) {
  sub->add_option("--epsilon", c.epsilon, "Privacy parameter epsilon");
  sub->add_option("--delta", c.delta, "Privacy parameter delta");
  sub->add_option(with_mode_name ? "--mode" : "--noise-mode", c.noise_mode,
                  "ideal|dlap_full|dlap_local|dlap_subgroup|dgn");
  sub->add_option("--honest-fraction", c.honest_fraction,
                  "Honest fraction for subgroup delegation");
  sub->add_option("--fail-prob", c.fail_prob,
                  "Failure probability for subgroup delegation");
  sub->add_option("--ideal-coeff", c.ideal_coeff,
                  "Bits of the ideal noise functionality in units of n^2*ell");
}

void add_graph_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--edges", c.edges, "Edge count m, frac:q, or a fraction");
  sub->add_option("--sampler", c.sampler, "balanced|uniform|bernoulli");
}

std::string canonical_text(const CLI::App& app, const CLI::App* sub) {
  std::string s;
  auto append = [&](const CLI::App& a, const std::string& prefix) {
    for (const CLI::Option* o : a.get_options()) {
      const std::string name = o->get_name();
      if (name.empty() || kNonSemantic.count(name)) continue;
      std::string v;
      if (o->count() > 0) {
        for (const auto& r : o->results()) v += r + ",";
      } else {
        v = o->get_default_str();
      }
      s += prefix + name + "=" + v + ";";
    }
  };
  append(app, "");
  if (sub) {
    s += "cmd=" + sub->get_name() + ";";
    append(*sub, sub->get_name() + ".");
  }
  return s;
}

std::string hash_hex(const std::string& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(s)));
  return buf;
}

KernelSpec make_kernel(const RunConfig& c) {
  KernelSpec k = builtin_kernel(c.kernel, c.fp);
  if (c.comm_bits_f) k.comm_bits_per_eval = *c.comm_bits_f;
  if (c.rounds_f) k.rounds_per_eval = *c.rounds_f;
  return k;
}

Dataset make_data(const RunConfig& c) {
  if (!c.dataset.empty()) {
    if (c.columns.empty()) {
      throw ConfigError("--dataset needs --columns");
    }
    return load_csv(c.dataset, parse_columns(c.columns));
  }
  Rng rng(Rng::derive(c.seed, kDataStream));
  return gen_synthetic(c.n, parse_synthetic_kind(c.synthetic), rng,
                       c.categories);
}

NoiseSpec make_noise(const RunConfig& c) {
  NoiseSpec s;
  s.epsilon = c.no_noise ? std::numeric_limits<double>::infinity() : c.epsilon;
  s.delta = c.delta;
  s.sensitivity = c.sensitivity;
  s.mode = parse_noise_mode(c.noise_mode);
  s.honest_fraction = c.honest_fraction;
  s.fail_prob = c.fail_prob;
  s.ideal_coeff = c.ideal_coeff;
  s.debug_checks = c.debug;
  s.validate();
  return s;
}

std::uint64_t total_tuples(std::uint32_t n, std::uint32_t k) {
  const auto t = binomial(n, k);
  if (!t) throw ScaleError("C(n,k) overflows 64 bits");
  return *t;
}

void emit(const RunConfig& c, const Table& t, std::ostream& out,
          const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const std::string hash = hash_hex(c.canonical);
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output '" + c.out + "'");
    os = &file;
  }
  if (c.format == "json") {
    write_json(*os, t,
               {{"config_hash", hash}, {"seed", std::to_string(c.seed)},
                {"command", c.subcommand}});
  } else {
    write_csv(*os, t, "config_hash=" + hash + " seed=" + std::to_string(c.seed));
  }
}

Table cmd_run(const RunConfig& c, std::vector<std::string>& warnings) {
  const KernelSpec kernel = make_kernel(c);
  const Dataset data = make_data(c);
  warnings = data.warnings;
  if (data.dropped_rows) {
    warnings.push_back(std::to_string(data.dropped_rows) +
                       " rows with missing values dropped");
  }
  const auto n = static_cast<std::uint32_t>(data.size());
  const std::uint64_t m = parse_edges(c.edges, total_tuples(n, kernel.arity));
  const SamplerKind sampler = parse_sampler(c.sampler);
  const NoiseSpec noise = make_noise(c);
  ProtocolOptions opts;
  opts.parallel = !c.serial;
  opts.debug_checks = c.debug;

  Table t;
  t.header = {"released", "noiseless", "eta", "bits_total", "rounds_total",
              "delta_g_max"};
  for (std::size_t r = 0; r < c.repetitions; ++r) {
    Rng rng(Rng::derive(c.seed, r));
    const Hypergraph g = sample_graph(sampler, m, kernel.arity, n, rng);
    const EstimateResult res = run_umpc(data, g, kernel, noise, c.fp, rng, opts);
    t.rows.push_back({res.released, res.noiseless,
                      static_cast<double>(res.eta_grid) * c.fp.h(),
                      static_cast<std::int64_t>(res.ledger.total_bits()),
                      std::int64_t{res.ledger.total_rounds()},
                      std::int64_t{res.delta_g_max}});
  }
  return t;
}

Table cmd_sample_graph(const RunConfig& c) {
  const std::uint64_t m = parse_edges(c.edges, total_tuples(c.n, c.k));
  Rng rng(c.seed);
  const Hypergraph g = sample_graph(parse_sampler(c.sampler), m, c.k, c.n, rng);
  Table t;
  for (std::uint32_t j = 0; j < c.k; ++j) t.header.push_back("v" + std::to_string(j));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    std::vector<Cell> row;
    for (Vertex v : g.edge(e)) row.emplace_back(std::int64_t{v});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_gen_noise(const RunConfig& c) {
  const NoiseSpec spec = make_noise(c);
  Rng rng(c.seed);
  Table t;
  t.header = {"eta"};
  for (std::uint64_t i = 0; i < c.samples; ++i) {
    const NoiseOutcome o = generate_noise(c.parties, spec, c.fp, rng);
    t.rows.push_back({static_cast<double>(o.eta_grid) * c.fp.h()});
  }
  return t;
}

Table cmd_compare(const RunConfig& c, std::vector<std::string>& warnings) {
  const KernelSpec kernel = make_kernel(c);
  const Dataset data = make_data(c);
  warnings = data.warnings;
  const auto n = static_cast<std::uint32_t>(data.size());
  const std::uint64_t m = parse_edges(c.edges, total_tuples(n, kernel.arity));
  const std::size_t reps = std::max<std::size_t>(c.repetitions, 2);

  MseConfig mc;
  mc.data = data;
  mc.kernel = kernel;
  mc.sampler = parse_sampler(c.sampler);
  mc.edges = m;
  mc.noise = make_noise(c);
  mc.noise.mode = NoiseMode::kDlapFull;
  mc.fp = c.fp;
  mc.repetitions = reps;
  mc.seed = c.seed;
  const MseReport dis = mse_experiment(mc);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  Estimate hf{nan, nan};
  double hf_bits = nan;
  if (subgroup_size(c.honest_fraction, c.fail_prob) <= n) {
    mc.noise.mode = NoiseMode::kDlapSubgroup;
    const MseReport r = mse_experiment(mc);
    hf = r.mse;
    hf_bits = r.mean_bits;
  } else {
    warnings.push_back("subgroup larger than n; Umpc_HF not simulated");
  }

  Estimate bell{nan, nan};
  if (kernel.components == 1 || kernel.name == "kendall") {
    const Dataset held = quantized(data, c.fp);
    const double ref = complete_ustat(held, kernel);
    Rng rng(Rng::derive(c.seed, 0xbe11));
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
      const double d = bell_estimate(held, kernel, c.t, c.epsilon, rng).estimate - ref;
      s += d * d;
      s2 += d * d * d * d;
    }
    const double r = static_cast<double>(reps);
    bell.mean = s / r;
    bell.se = std::sqrt(std::max(0.0, (s2 / r - bell.mean * bell.mean) / (r - 1)));
  }

  CostParams cp;
  cp.n = n;
  cp.t = c.t;
  cp.epsilon = c.epsilon;
  cp.ell = c.fp.ell;
  cp.edges = static_cast<double>(m);
  cp.lipschitz = std::isfinite(kernel.lipschitz) ? kernel.lipschitz : 1.0;
  cp.comm_f = static_cast<double>(kernel.comm_bits_per_eval);
  cp.ops_f = static_cast<double>(kernel.ops_per_party_per_eval);
  cp.c_eta = 1.0;

  Table t;
  t.header = {"protocol",   "executed",  "mse_empirical", "mse_empirical_se",
              "mse_model",  "bits_model", "bits_simulated", "party_ops",
              "server_ops"};
  for (CostProtocol p : all_cost_protocols()) {
    const CostReport cr = cost_eval(p, cp);
    Estimate emp{nan, nan};
    double bits_sim = nan;
    std::string executed = "no";
    if (p == CostProtocol::kBell && !std::isnan(bell.mean)) {
      emp = bell;
      executed = "yes";
      bits_sim = static_cast<double>(n) * c.fp.ell * c.t;
    } else if (p == CostProtocol::kUmpcDis) {
      emp = dis.mse;
      bits_sim = dis.mean_bits;
      executed = "yes";
    } else if (p == CostProtocol::kUmpcHF && !std::isnan(hf.mean)) {
      emp = hf;
      bits_sim = hf_bits;
      executed = "yes";
    }
    t.rows.push_back({cr.protocol, executed, emp.mean, emp.se, cr.mse, cr.bits,
                      bits_sim, cr.party_ops, cr.server_ops});
  }
  return t;
}

}  // namespace

std::uint64_t parse_edges(const std::string& spec, std::uint64_t total) {
  auto parse_double = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw UsageError("edges: cannot parse '" + spec + "'");
    }
    return v;
  };
  auto from_fraction = [&](double q) {
    if (!(q > 0.0 && q <= 1.0)) {
      throw UsageError("edges: fraction must lie in (0, 1], got '" + spec + "'");
    }
    return std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(q * static_cast<double>(total))));
  };
  if (spec.rfind("frac:", 0) == 0) return from_fraction(parse_double(spec.substr(5)));
  if (spec.find_first_of(".eE") != std::string::npos) {
    return from_fraction(parse_double(spec));
  }
  std::uint64_t m = 0;
  const auto res = std::from_chars(spec.data(), spec.data() + spec.size(), m);
  if (res.ec != std::errc() || res.ptr != spec.data() + spec.size()) {
    throw UsageError("edges: cannot parse '" + spec + "'");
  }
  if (m > total) {
    throw UsageError("edges: " + spec + " exceeds the " + std::to_string(total) +
                     " available tuples");
  }
  return m;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out, std::ostream& err,
                                    int& exit_code) {
  RunConfig c;
  CLI::App app{"Differentially private incomplete U-statistics over "
               "simulated secret-shared parties",
               "umpc"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with [subcommand] sections");
  app.add_option("--seed", c.seed, "Random seed")->envname("UMPC_SEED");
  app.add_option("--out", c.out, "Output path (default: standard output)");
  app.add_option("--format", c.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--ell", c.fp.ell, "Ring bit width");
  app.add_option("--frac-bits", c.fp.c, "Fractional bits");
  app.add_flag("--debug", c.debug, "Enable plaintext range checks");

  CLI::App* run = app.add_subcommand("run", "Simulate the protocol");
  add_data_options(run, c);
  add_kernel_options(run, c);
  add_graph_options(run, c);
  add_noise_options(run, c, false);
  run->add_option("--repetitions", c.repetitions, "Independent runs");
  run->add_flag("--no-noise", c.no_noise, "Disable noise (debug)");
  run->add_flag("--serial", c.serial, "Run computing and noise phases serially");

  CLI::App* sg = app.add_subcommand("sample-graph", "Emit a sampled edge list");
  sg->add_option("--n", c.n, "Vertex count");
  sg->add_option("--k", c.k, "Edge arity");
  add_graph_options(sg, c);

  CLI::App* gn = app.add_subcommand("gen-noise", "Emit decoded noise draws");
  add_noise_options(gn, c, true);
  gn->add_option("--sensitivity", c.sensitivity, "Sensitivity in real units");
  gn->add_option("--parties", c.parties, "Party count");
  gn->add_option("--samples", c.samples, "Number of draws");

  CLI::App* cmp = app.add_subcommand(
      "compare", "Simulated protocol vs local-DP baseline plus cost models");
  add_data_options(cmp, c);
  add_kernel_options(cmp, c);
  add_graph_options(cmp, c);
  add_noise_options(cmp, c, false);
  cmp->add_option("--t", c.t, "Baseline discretization bins");
  cmp->add_option("--repetitions", c.repetitions, "Monte Carlo repetitions");

  CLI::App* rep = app.add_subcommand("reproduce", "Run an experiment preset");
  rep->add_option("preset", c.preset, "gini-scaling|kendall-tradeoff|dupl-sampling")
      ->required()
      ->check(CLI::IsMember(reproduce_presets()));
  rep->add_option("--repetitions", c.preset_repetitions, "Override repetitions");
  rep->add_option("--n", c.preset_n, "Override party count");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      exit_code = app.exit(e, out, err);
      return std::nullopt;
    }
    err << "error kind=usage message=" << e.what() << '\n' << app.help();
    exit_code = 2;
    return std::nullopt;
  }
  for (CLI::App* s : app.get_subcommands()) {
    c.subcommand = s->get_name();
    c.canonical = canonical_text(app, s);
  }
  return c;
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.fp.validate();
    std::vector<std::string> warnings;
    Table t;
    if (c.subcommand == "run") {
      t = cmd_run(c, warnings);
    } else if (c.subcommand == "sample-graph") {
      t = cmd_sample_graph(c);
    } else if (c.subcommand == "gen-noise") {
      t = cmd_gen_noise(c);
    } else if (c.subcommand == "compare") {
      t = cmd_compare(c, warnings);
    } else if (c.subcommand == "reproduce") {
      ReproduceOptions o;
      o.seed = c.seed;
      o.repetitions = c.preset_repetitions;
      o.n = c.preset_n;
      t = reproduce(c.preset, o);
    } else {
      err << "error kind=usage message=unknown subcommand '" << c.subcommand
          << "'\n";
      return 2;
    }
    emit(c, t, out, warnings, err);
    return 0;
  } catch (const Error& e) {
    err << "error kind=" << e.kind() << " message=" << e.what() << '\n';
    return e.kind() == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error kind=internal message=" << e.what() << '\n';
    return 1;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  int code = 0;
  const auto cfg = parse_args(args, out, err, code);
  if (!cfg) return code;
  return execute(*cfg, out, err);
}

}  // namespace umpc
