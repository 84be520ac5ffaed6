// Copyright 2026 The guiltnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GUILTNET_CLI_HPP_
#define GUILTNET_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "guiltnet/abm.hpp"
#include "guiltnet/game.hpp"
#include "guiltnet/network.hpp"
#include "guiltnet/strategy.hpp"

namespace guiltnet::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3 };

// Parameters shared by every subcommand.
struct GameOptions {
  double b = 2.0;
  double c = 1.0;
  double gamma = 0.0;
  double gamma_s = 0.0;
  int omega = 10;
  double beta = 1.0;
  std::string strategies = "C,D,DGDN,DGCN,DGDS,DGCS";
  std::filesystem::path out = ".";
};

struct AnalyticOptions {
  GameOptions game;
  int N = 100;
};

struct SimulateOptions {
  GameOptions game;
  std::string topology = "lattice";
  int L = 30;
  int N = 0;  // 0: 100 well-mixed, 1000 scale-free
  int m = 2;
  int m0 = 0;  // 0: m + 1
  int networks = 10;
  long steps = 1'000'000;
  long window = 100'000;
  int replicates = 0;  // 0: 20 scale-free, 30 otherwise
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string update = "async";
  long thin = 100;
  bool timeseries = false;
  bool dump_networks = false;
};

struct SweepOptions {
  SimulateOptions sim;
  std::string mode = "abm";  // abm | analytic
  std::string gamma_grid = "0,1,2,3,4,5,6,7,8";
  std::string gamma_s_list = "0,0.1,0.5,1";
  std::string b_list = "2,4";
};

struct ClusterOptions {
  SimulateOptions sim;
  std::string snapshots;  // empty: final step only
};

// Entry point for the command-line tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Each command validates every option before creating any file.
int cmd_analytic(const AnalyticOptions& options, std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& err);
int cmd_cluster(const ClusterOptions& options, std::ostream& err);

// Comma-separated list of reals. Throws std::invalid_argument.
std::vector<double> parse_real_list(const std::string& text);

// 64-bit FNV-1a, hex encoded.
std::string content_hash(const std::string& text);

}  // namespace guiltnet::cli

#endif  // GUILTNET_CLI_HPP_
