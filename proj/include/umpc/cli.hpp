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

#ifndef UMPC_CLI_HPP_
#define UMPC_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "umpc/fixedpoint.hpp"

namespace umpc {

// Everything one invocation needs, after flags, config file and the
// UMPC_SEED environment variable have been merged.
struct RunConfig {
  std::string subcommand;

  // Data: a CSV path with a column selection, or a synthetic generator.
  std::string dataset;
  std::string columns;
  std::string synthetic = "uniform01";
  std::uint32_t n = 100;
  std::uint32_t categories = 12;

  FpConfig fp;
  std::string kernel = "gini";
  std::optional<std::uint64_t> comm_bits_f;
  std::optional<std::uint32_t> rounds_f;

  std::string edges = "frac:0.1";
  std::string sampler = "balanced";
  std::uint32_t k = 2;

  double epsilon = 1.0;
  double delta = 0.0;
  double sensitivity = 1.0;
  std::string noise_mode = "dlap_full";
  double honest_fraction = 0.5;
  double fail_prob = 0x1p-40;
  double ideal_coeff = 1.0;
  bool no_noise = false;
  bool serial = false;
  bool debug = false;

  std::uint32_t parties = 16;
  std::uint64_t samples = 10;
  std::size_t repetitions = 1;
  std::uint32_t t = 64;
  std::string preset;
  std::size_t preset_repetitions = 0;  // 0: preset default
  std::uint32_t preset_n = 0;

  std::uint64_t seed = 1;
  std::string out;  // empty: standard output
  std::string format = "csv";

  // Canonical "key=value;..." text of the options that affect results.
  std::string canonical;
};

// Parses arguments (without the program name). Returns the exit code on
// --help or a parse error after printing to `err`.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out, std::ostream& err,
                                    int& exit_code);

// Runs a parsed configuration. Library errors print one line
// "error kind=<kind> message=<text>" to `err` and return 1.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args then execute. Exit codes: 0 success, 1 runtime error, 2 usage.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Edge count from "m", "frac:q" or a decimal fraction such as "0.5".
std::uint64_t parse_edges(const std::string& spec, std::uint64_t total);

}  // namespace umpc

#endif  // UMPC_CLI_HPP_
