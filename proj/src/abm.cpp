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

#include "guiltnet/abm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "guiltnet/parallel.hpp"
#include "guiltnet/wellmixed.hpp"

namespace guiltnet {

namespace {

using FlatMatrix = std::array<double, kNumStrategies * kNumStrategies>;

FlatMatrix flatten(const StrategyMatrix& m) {
  FlatMatrix out{};
  for (std::size_t i = 0; i < kNumStrategies; ++i) {
    for (std::size_t j = 0; j < kNumStrategies; ++j) {
      out[i * kNumStrategies + j] = m.at(i, j);
    }
  }
  return out;
}

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

StrategyFractions to_fractions(const StrategyCounts& counts, std::size_t n) {
  StrategyFractions f{};
  for (std::size_t s = 0; s < kNumStrategies; ++s) {
    f[s] = static_cast<double>(counts[s]) / static_cast<double>(n);
  }
  return f;
}

// Payoff evaluation for one run. On the complete graph every player of a
// strategy has the same fitness, which is computed from the strategy counts.
class FitnessModel {
 public:
  FitnessModel(const Network& net, const StrategyMatrix& payoff)
      : net_(net),
        payoff_(flatten(payoff)),
        complete_(net.topology() == Topology::Complete) {}

  bool complete() const { return complete_; }

  double of_node(std::size_t node, const std::vector<Strategy>& s,
                 const StrategyCounts& counts) const {
    const std::size_t own = index(s[node]);
    if (complete_) return of_strategy(own, counts);
    double f = 0.0;
    const double* row = payoff_.data() + own * kNumStrategies;
    for (std::uint32_t j : net_.neighbors(node)) f += row[index(s[j])];
    return f;
  }

  double of_strategy(std::size_t own, const StrategyCounts& counts) const {
    const double* row = payoff_.data() + own * kNumStrategies;
    double f = 0.0;
    for (std::size_t t = 0; t < kNumStrategies; ++t) {
      const std::size_t others = counts[t] - (t == own ? 1 : 0);
      f += row[t] * static_cast<double>(others);
    }
    return f;
  }

  void all(const std::vector<Strategy>& s, const StrategyCounts& counts,
           std::vector<double>& out) const {
    out.resize(s.size());
    if (complete_) {
      std::array<double, kNumStrategies> per{};
      for (std::size_t t = 0; t < kNumStrategies; ++t) {
        if (counts[t] > 0) per[t] = of_strategy(t, counts);
      }
      for (std::size_t i = 0; i < s.size(); ++i) out[i] = per[index(s[i])];
      return;
    }
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = of_node(i, s, counts);
  }

 private:
  const Network& net_;
  FlatMatrix payoff_;
  bool complete_;
};

void check_state(const PopulationState& state, const Network& net) {
  if (state.strategies.size() != net.size()) {
    throw std::invalid_argument("population size does not match network");
  }
}

void step_synchronous(PopulationState& state, const Network& net,
                      const FitnessModel& fitness, double beta, Rng& rng,
                      std::vector<double>& scratch) {
  const StrategyCounts counts = state.counts();
  fitness.all(state.strategies, counts, scratch);
  std::vector<Strategy> next = state.strategies;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto nb = net.neighbors(i);
    if (nb.empty()) continue;
    const std::uint32_t j = nb[uniform_index(rng, nb.size())];
    if (state.strategies[j] == state.strategies[i]) continue;
    if (uniform01(rng) < fermi_probability(scratch[i], scratch[j], beta)) {
      next[i] = state.strategies[j];
    }
  }
  state.strategies = std::move(next);
}

void step_asynchronous(PopulationState& state, const Network& net,
                       const FitnessModel& fitness, double beta, Rng& rng) {
  StrategyCounts counts = state.counts();
  auto& s = state.strategies;
  for (std::size_t t = 0; t < net.size(); ++t) {
    const std::size_t i = uniform_index(rng, net.size());
    const auto nb = net.neighbors(i);
    if (nb.empty()) continue;
    const std::uint32_t j = nb[uniform_index(rng, nb.size())];
    if (s[j] == s[i]) continue;
    const double fi = fitness.of_node(i, s, counts);
    const double fj = fitness.of_node(j, s, counts);
    if (uniform01(rng) < fermi_probability(fi, fj, beta)) {
      --counts[index(s[i])];
      ++counts[index(s[j])];
      s[i] = s[j];
    }
  }
}

double coop_from_counts(const FlatMatrix& coop, const StrategyCounts& counts,
                        std::size_t n) {
  double total = 0.0;
  for (std::size_t a = 0; a < kNumStrategies; ++a) {
    if (counts[a] == 0) continue;
    for (std::size_t b = 0; b < kNumStrategies; ++b) {
      const std::size_t others = counts[b] - (a == b ? 1 : 0);
      total += static_cast<double>(counts[a]) * static_cast<double>(others) *
               coop[a * kNumStrategies + b];
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double coop_level_flat(const PopulationState& state, const FlatMatrix& coop,
                       const Network& net) {
  if (net.topology() == Topology::Complete && net.size() >= 2) {
    return coop_from_counts(coop, state.counts(), net.size());
  }
  double total = 0.0;
  std::size_t pairs = 0;
  const auto& s = state.strategies;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double* row = coop.data() + index(s[i]) * kNumStrategies;
    for (std::uint32_t j : net.neighbors(i)) total += row[index(s[j])];
    pairs += net.degree(i);
  }
  return pairs == 0 ? 0.0 : total / static_cast<double>(pairs);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void SimConfig::validate() const {
  if (steps < 1) throw ValidationError("steps >= 1 violated");
  if (window < 1) throw ValidationError("window >= 1 violated");
  if (window > steps) throw ValidationError("window <= steps violated");
  if (replicates < 1) throw ValidationError("replicates >= 1 violated");
  if (!(beta >= 0) || !std::isfinite(beta)) {
    throw ValidationError("beta >= 0 violated");
  }
  if (allowed.empty()) throw ValidationError("allowed strategies is empty");
  if (thin < 0) throw ValidationError("thin >= 0 violated");
  for (long s : snapshots) {
    if (s < 0 || s > steps) {
      throw ValidationError("snapshot step outside [0, steps]");
    }
  }
}

StrategyCounts PopulationState::counts() const {
  StrategyCounts c{};
  for (Strategy s : strategies) ++c[index(s)];
  return c;
}

PopulationState init_population(const Network& net,
                                const std::vector<Strategy>& allowed,
                                Rng& rng) {
  if (allowed.empty()) throw ValidationError("allowed strategies is empty");
  PopulationState state;
  state.strategies.resize(net.size());
  for (auto& s : state.strategies) s = allowed[uniform_index(rng, allowed.size())];
  return state;
}

double node_fitness(std::size_t node, const PopulationState& state,
                    const Network& net, const StrategyMatrix& payoff) {
  check_state(state, net);
  double f = 0.0;
  for (std::uint32_t j : net.neighbors(node)) {
    f += payoff(state.strategies[node], state.strategies[j]);
  }
  return f;
}

void evolution_step(PopulationState& state, const Network& net,
                    const StrategyMatrix& payoff, const SimConfig& config,
                    Rng& rng) {
  check_state(state, net);
  const FitnessModel fitness(net, payoff);
  if (config.update == UpdateRule::Synchronous) {
    std::vector<double> scratch;
    step_synchronous(state, net, fitness, config.beta, rng, scratch);
  } else {
    step_asynchronous(state, net, fitness, config.beta, rng);
  }
  ++state.step;
}

double cooperation_level(const PopulationState& state,
                         const StrategyMatrix& coop, const Network& net) {
  check_state(state, net);
  return coop_level_flat(state, flatten(coop), net);
}

CompositionTable neighborhood_composition(const PopulationState& state,
                                          const Network& net) {
  check_state(state, net);
  CompositionTable table;
  std::array<StrategyFractions, kNumStrategies> sums{};
  std::array<std::size_t, kNumStrategies> members{};
  const auto& s = state.strategies;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const std::size_t own = index(s[i]);
    ++members[own];
    const auto nb = net.neighbors(i);
    if (nb.empty()) continue;
    const double w = 1.0 / static_cast<double>(nb.size());
    for (std::uint32_t j : nb) sums[own][index(s[j])] += w;
  }
  for (std::size_t t = 0; t < kNumStrategies; ++t) {
    table[t].share =
        static_cast<double>(members[t]) / static_cast<double>(net.size());
    if (members[t] == 0) continue;
    StrategyFractions mean{};
    for (std::size_t u = 0; u < kNumStrategies; ++u) {
      mean[u] = sums[t][u] / static_cast<double>(members[t]);
    }
    table[t].neighbors = mean;
  }
  return table;
}

RunResult run(const Network& net, const GameSpec& spec,
              const SimConfig& config) {
  config.validate();
  spec.validate();
  if (net.size() < 2) throw ValidationError("network needs >= 2 nodes");

  const StrategyMatrix payoff = payoff_matrix(spec);
  const FlatMatrix coop = flatten(coop_matrix(spec.omega));
  const FitnessModel fitness(net, payoff);

  RunResult result;
  result.seed = config.seed;
  result.network_seed = net.seed();
  result.config = config;

  Rng rng(config.seed);
  PopulationState state = init_population(net, config.allowed, rng);
  std::vector<double> scratch;
  std::vector<long> snapshots = config.snapshots;
  std::sort(snapshots.begin(), snapshots.end());
  snapshots.erase(std::unique(snapshots.begin(), snapshots.end()),
                  snapshots.end());
  auto next_snapshot = snapshots.begin();

  const auto observe = [&] {
    while (next_snapshot != snapshots.end() && *next_snapshot == state.step) {
      result.snapshots.push_back(
          {state.step, neighborhood_composition(state, net)});
      ++next_snapshot;
    }
    if (config.thin > 0 && state.step % config.thin == 0) {
      result.series.push_back({state.step,
                               to_fractions(state.counts(), net.size()),
                               coop_level_flat(state, coop, net)});
    }
  };

  observe();
  const long window_start = config.steps - config.window;
  StrategyFractions freq_sum{};
  double coop_sum = 0.0;
  // A monomorphic population is absorbing; later steps only re-measure it.
  bool frozen = false;
  for (long t = 0; t < config.steps; ++t) {
    if (!frozen && t % 64 == 0) {
      const StrategyCounts counts = state.counts();
      frozen = std::count(counts.begin(), counts.end(), std::size_t{0}) ==
               static_cast<std::ptrdiff_t>(kNumStrategies - 1);
    }
    if (!frozen) {
      if (config.update == UpdateRule::Synchronous) {
        step_synchronous(state, net, fitness, config.beta, rng, scratch);
      } else {
        step_asynchronous(state, net, fitness, config.beta, rng);
      }
    }
    ++state.step;
    if (state.step > window_start) {
      const StrategyCounts counts = state.counts();
      for (std::size_t s = 0; s < kNumStrategies; ++s) {
        freq_sum[s] += static_cast<double>(counts[s]);
      }
      coop_sum += coop_level_flat(state, coop, net);
    }
    observe();
  }

  const double samples = static_cast<double>(config.window);
  const double n = static_cast<double>(net.size());
  for (std::size_t s = 0; s < kNumStrategies; ++s) {
    result.mean_frequencies[s] = freq_sum[s] / (samples * n);
  }
  result.mean_cooperation = coop_sum / samples;
  result.final_composition = neighborhood_composition(state, net);
  result.final_counts = state.counts();
  return result;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

std::vector<RunResult> run_replicates(const std::vector<Network>& networks,
                                      const GameSpec& spec,
                                      const SimConfig& config, int jobs) {
  config.validate();
  if (networks.empty()) throw ValidationError("no networks supplied");
  std::vector<RunResult> results(static_cast<std::size_t>(config.replicates));
  parallel_for(results.size(), jobs, [&](std::size_t r) {
    SimConfig local = config;
    local.seed = derive_seed(config.seed, kReplicateStream, r);
    results[r] = run(networks[r % networks.size()], spec, local);
  });
  return results;
}

Aggregate aggregate(const std::vector<RunResult>& results) {
  Aggregate agg;
  agg.replicates = static_cast<int>(results.size());
  if (results.empty()) return agg;
  const double n = static_cast<double>(results.size());
  for (const auto& r : results) {
    for (std::size_t s = 0; s < kNumStrategies; ++s) {
      agg.frequency_mean[s] += r.mean_frequencies[s] / n;
    }
    agg.cooperation_mean += r.mean_cooperation / n;
  }
  if (results.size() < 2) return agg;
  for (const auto& r : results) {
    for (std::size_t s = 0; s < kNumStrategies; ++s) {
      const double d = r.mean_frequencies[s] - agg.frequency_mean[s];
      agg.frequency_sd[s] += d * d;
    }
    const double d = r.mean_cooperation - agg.cooperation_mean;
    agg.cooperation_sd += d * d;
  }
  for (double& v : agg.frequency_sd) v = std::sqrt(v / (n - 1.0));
  agg.cooperation_sd = std::sqrt(agg.cooperation_sd / (n - 1.0));
  return agg;
}

}  // namespace guiltnet
