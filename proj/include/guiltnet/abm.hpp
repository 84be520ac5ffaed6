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

#ifndef GUILTNET_ABM_HPP_
#define GUILTNET_ABM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "guiltnet/game.hpp"
#include "guiltnet/network.hpp"
#include "guiltnet/strategy.hpp"

namespace guiltnet {

using Rng = std::mt19937_64;
using StrategyCounts = std::array<std::size_t, kNumStrategies>;
using StrategyFractions = std::array<double, kNumStrategies>;

enum class UpdateRule { Synchronous, Asynchronous };

struct SimConfig {
  long steps = 1'000'000;
  long window = 100'000;  // trailing steps that are averaged
  int replicates = 30;
  double beta = 1.0;
  UpdateRule update = UpdateRule::Asynchronous;
  std::vector<Strategy> allowed{kAllStrategies.begin(), kAllStrategies.end()};
  std::uint64_t seed = 1;
  // Time-series sampling period; 0 disables the series.
  long thin = 100;
  // Steps after which the neighborhood composition is recorded. Step 0 is the
  // initial population.
  std::vector<long> snapshots;

  void validate() const;
};

struct PopulationState {
  std::vector<Strategy> strategies;
  long step = 0;

  StrategyCounts counts() const;
};

// Each node draws uniformly from `allowed`.
PopulationState init_population(const Network& net,
                                const std::vector<Strategy>& allowed,
                                Rng& rng);

// Sum of the payoff entries against every neighbor; 0 for isolated nodes.
double node_fitness(std::size_t node, const PopulationState& state,
                    const Network& net, const StrategyMatrix& payoff);

// One generation of Fermi imitation of a random neighbor. Synchronous mode
// updates every node from the frozen pre-step state in node order;
// asynchronous mode performs N random sequential updates.
void evolution_step(PopulationState& state, const Network& net,
                    const StrategyMatrix& payoff, const SimConfig& config,
                    Rng& rng);

// Mean over ordered adjacent pairs (i, j) of coop(strategy_i, strategy_j).
double cooperation_level(const PopulationState& state,
                         const StrategyMatrix& coop, const Network& net);

struct CompositionRow {
  double share = 0.0;
  // Mean neighbor-strategy fractions over nodes playing this strategy; empty
  // when the strategy is absent.
  std::optional<StrategyFractions> neighbors;
};

using CompositionTable = std::array<CompositionRow, kNumStrategies>;

CompositionTable neighborhood_composition(const PopulationState& state,
                                          const Network& net);

struct SeriesPoint {
  long step = 0;
  StrategyFractions frequencies{};
  double cooperation = 0.0;
};

struct Snapshot {
  long step = 0;
  CompositionTable composition;
};

struct RunResult {
  StrategyFractions mean_frequencies{};
  double mean_cooperation = 0.0;
  std::vector<SeriesPoint> series;
  CompositionTable final_composition;
  std::vector<Snapshot> snapshots;
  StrategyCounts final_counts{};
  std::uint64_t seed = 0;
  std::uint64_t network_seed = 0;
  SimConfig config;
};

// A single replicate seeded with `config.seed`.
RunResult run(const Network& net, const GameSpec& spec,
              const SimConfig& config);

// Deterministic per-stream seed expansion (splitmix64 over a counter).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

inline constexpr std::uint64_t kReplicateStream = 1;

// Runs `config.replicates` replicates; replicate r uses networks[r % size]
// and seed derive_seed(config.seed, kReplicateStream, r). Results come back
// in replicate order regardless of `jobs`.
std::vector<RunResult> run_replicates(const std::vector<Network>& networks,
                                      const GameSpec& spec,
                                      const SimConfig& config, int jobs = 1);

struct Aggregate {
  StrategyFractions frequency_mean{};
  StrategyFractions frequency_sd{};
  double cooperation_mean = 0.0;
  double cooperation_sd = 0.0;
  int replicates = 0;
};

// Sample standard deviations (0 for a single replicate).
Aggregate aggregate(const std::vector<RunResult>& results);

}  // namespace guiltnet

#endif  // GUILTNET_ABM_HPP_
