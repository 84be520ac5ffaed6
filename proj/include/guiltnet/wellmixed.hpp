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

#ifndef GUILTNET_WELLMIXED_HPP_
#define GUILTNET_WELLMIXED_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "guiltnet/game.hpp"
#include "guiltnet/strategy.hpp"

namespace guiltnet {

struct EvoParams {
  int N = 100;        // population size
  double beta = 1.0;  // intensity of selection

  void validate() const;
};

// Probability that an agent with fitness `f_self` imitates one with fitness
// `f_other`: 1 / (1 + exp(-beta (f_other - f_self))). Stable for any
// argument magnitude.
double fermi_probability(double f_self, double f_other, double beta);

// Average payoff of an A-player when k players use A and N - k use B.
// Requires 1 <= k <= N - 1.
double group_payoff_a(Strategy a, Strategy b, int k, const EvoParams& params,
                      const StrategyMatrix& payoff);

// Average payoff of a B-player in the same state. Requires 1 <= k <= N - 1.
double group_payoff_b(Strategy a, Strategy b, int k, const EvoParams& params,
                      const StrategyMatrix& payoff);

struct StepProbabilities {
  double plus = 0.0;
  double minus = 0.0;
};

// Probabilities that the number k of A-players grows or shrinks by one.
StepProbabilities step_probabilities(int k, Strategy a, Strategy b,
                                     const EvoParams& params,
                                     const StrategyMatrix& payoff);

// Probability that a single `mutant` takes over a population of `resident`.
// Evaluated as a log-sum-exp over the telescoped transition ratios.
double fixation_probability(Strategy mutant, Strategy resident,
                            const EvoParams& params,
                            const StrategyMatrix& payoff);

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

// Small-mutation-limit chain over monomorphic states.
struct MarkovModel {
  std::vector<Strategy> strategies;
  // fixation[i][j]: a j-mutant fixating in an i-resident population.
  std::vector<std::vector<double>> fixation;
  // transition[i][j] = fixation[i][j] / (q - 1) off the diagonal.
  std::vector<std::vector<double>> transition;
  std::vector<double> stationary;

  std::size_t size() const { return strategies.size(); }
};

MarkovModel build_markov(const std::vector<Strategy>& strategies,
                         const EvoParams& params,
                         const StrategyMatrix& payoff);

// Stationary vector of a row-stochastic matrix by solving pi (M - I) = 0
// with sum(pi) = 1. Throws SingularSystemError when the system is
// ill-conditioned.
std::vector<double> stationary_linear(
    const std::vector<std::vector<double>>& transition);

// Same quantity by repeated left multiplication. Returns the iterate after
// convergence (max change below `tol`) or after `max_iter` steps.
std::vector<double> stationary_power(
    const std::vector<std::vector<double>>& transition, double tol = 1e-15,
    long max_iter = 10'000'000);

struct Edge {
  Strategy from;
  Strategy to;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Edge A -> B iff B fixates in A more readily than A fixates in B.
std::vector<Edge> transition_directions(const MarkovModel& model);

enum class Dominance { First, Second, Neutral };

// Large-population risk dominance: A wins iff
// pi_AA + pi_AB > pi_BA + pi_BB.
Dominance risk_dominant(Strategy a, Strategy b, const StrategyMatrix& payoff);

// Closed-form risk-dominance verdicts for the donation game. Each `margin` is
// a positive multiple of (pi_AA + pi_AB - pi_BA - pi_BB) for the listed pair,
// so its sign is the verdict.
struct ClosedFormReport {
  struct Condition {
    std::string name;
    Strategy first;
    Strategy second;
    double margin = 0.0;
    Dominance verdict = Dominance::Neutral;
    // Whether `first` is strictly risk-dominant.
    bool holds() const { return verdict == Dominance::First; }
  };
  std::vector<Condition> conditions;
  // DGCS beats D while DGCN beats DGCS: the DGCS -> DGCN -> D -> DGCS cycle.
  bool cyclic = false;
};

ClosedFormReport closed_form_conditions(const GameSpec& spec,
                                        const DonationParams& donation);

}  // namespace guiltnet

#endif  // GUILTNET_WELLMIXED_HPP_
