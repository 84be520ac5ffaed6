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

#include "guiltnet/game.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "guiltnet/format.hpp"

namespace guiltnet {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

bool finite(double x) { return std::isfinite(x); }

// One player's state inside an encounter. `guilt` is the transient level g.
struct Player {
  Strategy strategy;
  bool switched = false;
  int guilt = 0;

  Action act() const {
    if (strategy == Strategy::C) return Action::Cooperate;
    if (adaptive(strategy) && switched) return Action::Cooperate;
    return Action::Defect;
  }
};

double base_payoff(const PayoffEntries& p, Action self, Action other) {
  if (self == Action::Cooperate) {
    return other == Action::Cooperate ? p.R : p.S;
  }
  return other == Action::Cooperate ? p.T : p.P;
}

struct CostOutcome {
  int guilt_before = 0;
  int guilt_after = 0;
  double gamma_paid = 0.0;
  double gamma_s_paid = 0.0;
};

// Applies the wrongdoing bookkeeping after `self` played `action`. The guilt
// threshold is 0 for guilt-prone strategies, so a registered wrongdoing always
// has to be alleviated at once.
CostOutcome settle(Player& self, Strategy other, Action action,
                   const GuiltParams& guilt) {
  CostOutcome out;
  if (action != Action::Defect) {
    out.guilt_before = out.guilt_after = self.guilt;
    return out;
  }
  if (!guilt_prone(self.strategy)) {
    // Infinite threshold: the level grows but is never alleviated.
    ++self.guilt;
    out.guilt_before = out.guilt_after = self.guilt;
    return out;
  }
  if (social(self.strategy)) out.gamma_s_paid = guilt.gamma_s;
  if (guilt_trigger(self.strategy, other)) {
    ++self.guilt;
    out.guilt_before = self.guilt;
    while (self.guilt > 0) {
      --self.guilt;
      out.gamma_paid += guilt.gamma;
    }
    if (adaptive(self.strategy)) self.switched = true;
  } else {
    out.guilt_before = self.guilt;
  }
  out.guilt_after = self.guilt;
  return out;
}

void accumulate(EncounterTrace::Side& side, Action action, double base,
                const CostOutcome& cost) {
  side.base_total += base;
  side.gamma_total += cost.gamma_paid;
  side.gamma_s_total += cost.gamma_s_paid;
  if (cost.gamma_paid > 0.0 || cost.guilt_before > cost.guilt_after) {
    ++side.guilt_episodes;
  }
  if (cost.gamma_s_paid > 0.0) ++side.social_payments;
  if (action == Action::Cooperate) ++side.cooperations;
}

void finish(EncounterTrace::Side& side, int omega) {
  side.average_payoff =
      (side.base_total - side.gamma_total - side.gamma_s_total) / omega;
  side.cooperation_fraction = static_cast<double>(side.cooperations) / omega;
}

}  // namespace

void PayoffEntries::validate() const {
  require(finite(T) && finite(R) && finite(P) && finite(S),
          "payoff entries must be finite");
  require(T > R, "T > R violated");
  require(R > P, "R > P violated");
  require(P > S, "P > S violated");
  require(2 * R > T + S, "2R > T + S violated");
}

void DonationParams::validate() const {
  require(finite(b) && finite(c), "b and c must be finite");
  require(c > 0, "c > 0 violated");
  require(b > c, "b > c violated");
}

void GuiltParams::validate() const {
  require(finite(gamma) && gamma >= 0, "gamma >= 0 violated");
  require(finite(gamma_s) && gamma_s >= 0, "gamma_s >= 0 violated");
}

void GameSpec::validate() const {
  payoffs.validate();
  guilt.validate();
  require(omega >= 1, "omega >= 1 violated");
}

PayoffEntries donation_payoffs(const DonationParams& p) {
  p.validate();
  return PayoffEntries{.T = p.b, .R = p.b - p.c, .P = 0.0, .S = -p.c};
}

bool guilt_trigger(Strategy focal, Strategy opponent) {
  if (!guilt_prone(focal)) {
    throw std::logic_error("guilt_trigger: unemotional strategy " +
                           std::string(name(focal)) + " never feels guilt");
  }
  if (!social(focal)) return true;
  return opponent != Strategy::D;
}

EncounterTrace simulate_encounter(Strategy focal, Strategy opponent,
                                  const GameSpec& spec) {
  spec.validate();
  EncounterTrace trace;
  trace.rounds.reserve(static_cast<std::size_t>(spec.omega));
  Player a{focal};
  Player b{opponent};
  for (int round = 0; round < spec.omega; ++round) {
    const Action act_a = a.act();
    const Action act_b = b.act();
    const double base_a = base_payoff(spec.payoffs, act_a, act_b);
    const double base_b = base_payoff(spec.payoffs, act_b, act_a);
    // Both sides decide before either settles, so a switch takes effect in
    // the next round.
    const CostOutcome cost_a = settle(a, opponent, act_a, spec.guilt);
    const CostOutcome cost_b = settle(b, focal, act_b, spec.guilt);

    trace.rounds.push_back(RoundRecord{
        .round = round,
        .focal_action = act_a,
        .opponent_action = act_b,
        .focal_base_payoff = base_a,
        .guilt_before = cost_a.guilt_before,
        .guilt_after = cost_a.guilt_after,
        .gamma_paid = cost_a.gamma_paid,
        .gamma_s_paid = cost_a.gamma_s_paid,
    });
    accumulate(trace.focal, act_a, base_a, cost_a);
    accumulate(trace.opponent, act_b, base_b, cost_b);
  }
  finish(trace.focal, spec.omega);
  finish(trace.opponent, spec.omega);
  return trace;
}

std::string StrategyMatrix::to_csv() const {
  std::ostringstream out;
  out << "strategy";
  for (Strategy s : kAllStrategies) out << ',' << name(s);
  out << '\n';
  for (Strategy row : kAllStrategies) {
    out << name(row);
    for (Strategy col : kAllStrategies) {
      out << ',' << format_double((*this)(row, col));
    }
    out << '\n';
  }
  return out.str();
}

StrategyMatrix payoff_matrix(const GameSpec& spec) {
  spec.validate();
  const auto [T, R, P, S] = spec.payoffs;
  const double g = spec.guilt.gamma;
  const double gs = spec.guilt.gamma_s;
  const double omega = spec.omega;
  const double theta = omega - 1.0;

  using enum Strategy;
  StrategyMatrix m;
  const auto set_row = [&m](Strategy row, std::array<double, 6> values) {
    for (std::size_t j = 0; j < kNumStrategies; ++j) {
      m(row, kAllStrategies[j]) = values[j];
    }
  };
  // Columns: C, D, DGDN, DGCN, DGDS, DGCS.
  set_row(C, {R, S, S, (S + R * theta) / omega, S, (S + R * theta) / omega});
  set_row(D, {T, P, P, (P + T * theta) / omega, P, P});
  set_row(DGDN, {T - g, P - g, P - g, (P + T * theta) / omega - g, P - g,
                 (P + T * theta) / omega - g});
  set_row(DGCN,
          {(T - g + R * theta) / omega, (P - g + S * theta) / omega,
           (P - g + S * theta) / omega, (P - g + R * theta) / omega,
           (P - g + S * theta) / omega, (P - g + R * theta) / omega});
  set_row(DGDS, {T - g - gs, P - gs, P - g - gs,
                 (P + T * theta) / omega - g - gs, P - g - gs,
                 (P + T * theta) / omega - g - gs});
  set_row(DGCS,
          {(T - g - gs + R * theta) / omega, P - gs,
           (P - g - gs + S * theta) / omega, (P - g - gs + R * theta) / omega,
           (P - g - gs + S * theta) / omega,
           (P - g - gs + R * theta) / omega});
  return m;
}

StrategyMatrix coop_matrix(int omega) {
  if (omega < 1) throw ValidationError("omega >= 1 violated");
  // Cooperation patterns do not depend on payoff values or costs.
  GameSpec spec;
  spec.omega = omega;
  StrategyMatrix m;
  for (Strategy row : kAllStrategies) {
    for (Strategy col : kAllStrategies) {
      m(row, col) = simulate_encounter(row, col, spec).focal.cooperation_fraction;
    }
  }
  return m;
}

}  // namespace guiltnet
