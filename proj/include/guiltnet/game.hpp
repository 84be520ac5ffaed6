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

#ifndef GUILTNET_GAME_HPP_
#define GUILTNET_GAME_HPP_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "guiltnet/strategy.hpp"

namespace guiltnet {

// Raised when a parameter set violates a model invariant. The message names
// the violated inequality.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PayoffEntries {
  double T = 2.0;
  double R = 1.0;
  double P = 0.0;
  double S = -1.0;

  // Requires T > R > P > S and 2R > T + S.
  void validate() const;
};

struct DonationParams {
  double b = 2.0;
  double c = 1.0;

  void validate() const;
};

struct GuiltParams {
  double gamma = 0.0;    // paid per guilt episode
  double gamma_s = 0.0;  // paid per defecting round by a social strategy

  void validate() const;
};

struct GameSpec {
  PayoffEntries payoffs;
  int omega = 10;  // rounds per encounter
  GuiltParams guilt;

  void validate() const;
};

// T = b, R = b - c, P = 0, S = -c.
PayoffEntries donation_payoffs(const DonationParams& p);

// Whether a defection by a guilt-prone `focal` against `opponent` produces a
// guilt episode. Non-social strategies always feel guilt; social ones only
// when the opponent is not an unemotional defector.
bool guilt_trigger(Strategy focal, Strategy opponent);

struct RoundRecord {
  int round = 0;
  Action focal_action = Action::Cooperate;
  Action opponent_action = Action::Cooperate;
  double focal_base_payoff = 0.0;
  int guilt_before = 0;
  int guilt_after = 0;
  double gamma_paid = 0.0;
  double gamma_s_paid = 0.0;
};

// Round-by-round account of one iterated encounter, seen from the focal
// player. Totals and averages are kept for both sides.
struct EncounterTrace {
  std::vector<RoundRecord> rounds;

  struct Side {
    double base_total = 0.0;
    double gamma_total = 0.0;
    double gamma_s_total = 0.0;
    int guilt_episodes = 0;
    int social_payments = 0;
    int cooperations = 0;
    double average_payoff = 0.0;    // (base - costs) / omega
    double cooperation_fraction = 0.0;
  };
  Side focal;
  Side opponent;
};

// Plays `spec.omega` rounds between the two strategies, tracking each side's
// transient guilt level. Independent of the closed-form payoff matrix.
EncounterTrace simulate_encounter(Strategy focal, Strategy opponent,
                                  const GameSpec& spec);

// 6x6 matrix indexed by (row = focal, column = opponent).
class StrategyMatrix {
 public:
  StrategyMatrix() { values_.fill(0.0); }

  double operator()(Strategy row, Strategy col) const {
    return values_[index(row) * kNumStrategies + index(col)];
  }
  double& operator()(Strategy row, Strategy col) {
    return values_[index(row) * kNumStrategies + index(col)];
  }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * kNumStrategies + col];
  }

  // CSV with a header row and a leading name column, rows in matrix order.
  std::string to_csv() const;

 private:
  std::array<double, kNumStrategies * kNumStrategies> values_;
};

// Per-round average payoffs of the six strategies against each other, in
// closed form.
StrategyMatrix payoff_matrix(const GameSpec& spec);

// Fraction of rounds in which the row strategy cooperates against the column
// strategy, tabulated from simulated encounters.
StrategyMatrix coop_matrix(int omega);

}  // namespace guiltnet

#endif  // GUILTNET_GAME_HPP_
