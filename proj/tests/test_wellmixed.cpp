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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "guiltnet/wellmixed.hpp"

using namespace guiltnet;
using enum Strategy;

namespace {

GameSpec donation_spec(double b, double c, int omega, double gamma,
                       double gamma_s) {
  GameSpec spec;
  spec.payoffs = donation_payoffs({b, c});
  spec.omega = omega;
  spec.guilt = {gamma, gamma_s};
  return spec;
}

// Fixation probability as 1 / (1 + sum_i prod_{j<=i} T-(j)/T+(j)), with the
// ratios taken from the step probabilities themselves.
double fixation_by_products(Strategy mutant, Strategy resident,
                            const EvoParams& params, const StrategyMatrix& m) {
  double sum = 0.0;
  double product = 1.0;
  for (int j = 1; j <= params.N - 1; ++j) {
    const auto step = step_probabilities(j, mutant, resident, params, m);
    product *= step.minus / step.plus;
    sum += product;
  }
  return 1.0 / (1.0 + sum);
}

bool edge(const std::vector<Edge>& edges, Strategy from, Strategy to) {
  return std::find(edges.begin(), edges.end(), Edge{from, to}) != edges.end();
}

}  // namespace

TEST_CASE("fermi probability") {
  CHECK(fermi_probability(1.3, 1.3, 5.0) == 0.5);
  CHECK(fermi_probability(-4.0, 9.0, 0.0) == 0.5);
  const double up = fermi_probability(0.0, 3.7, 1.0);
  const double down = fermi_probability(3.7, 0.0, 1.0);
  CHECK(up + down == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(up == doctest::Approx(1.0 / (1.0 + std::exp(-3.7))));
  // Saturates without overflow.
  CHECK(fermi_probability(0.0, 1e4, 1.0) == 1.0);
  CHECK(fermi_probability(1e4, 0.0, 1.0) == 0.0);
  CHECK(fermi_probability(0.0, -1e4, 1.0) >= 0.0);
  CHECK(std::isfinite(fermi_probability(0.0, 1e4, 1.0)));
}

TEST_CASE("group payoffs") {
  const auto m = payoff_matrix(donation_spec(2, 1, 10, 0, 0));
  const EvoParams params{100, 1.0};
  CHECK(group_payoff_a(D, C, 1, params, m) == m(D, C));
  CHECK(group_payoff_b(D, C, 99, params, m) == m(C, D));
  CHECK(group_payoff_a(D, C, 50, params, m) ==
        doctest::Approx(100.0 / 99.0).epsilon(1e-15));
  CHECK_THROWS_AS(group_payoff_a(D, C, 0, params, m), std::out_of_range);
  CHECK_THROWS_AS(group_payoff_a(D, C, 100, params, m), std::out_of_range);
}

TEST_CASE("step probabilities") {
  const auto m = payoff_matrix(donation_spec(2, 1, 10, 1, 0.5));
  const EvoParams params{50, 1.0};
  const auto at0 = step_probabilities(0, DGCS, D, params, m);
  CHECK(at0.plus == 0.0);
  CHECK(at0.minus == 0.0);
  const auto atN = step_probabilities(50, DGCS, D, params, m);
  CHECK(atN.plus == 0.0);
  CHECK(atN.minus == 0.0);

  const EvoParams neutral{50, 0.0};
  for (int k = 1; k < 50; ++k) {
    const auto s = step_probabilities(k, DGCS, D, neutral, m);
    const double expected = (50.0 - k) * k / (2.0 * 50 * 50);
    CHECK(s.plus == doctest::Approx(expected).epsilon(1e-15));
    CHECK(s.minus == doctest::Approx(expected).epsilon(1e-15));
  }

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> k_dist(1, 49);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = k_dist(rng);
    const auto s = step_probabilities(k, DGCS, D, params, m);
    const double diff = group_payoff_a(DGCS, D, k, params, m) -
                        group_payoff_b(DGCS, D, k, params, m);
    CHECK(s.minus / s.plus == doctest::Approx(std::exp(-diff)).epsilon(1e-12));
  }
}

TEST_CASE("fixation probability examples") {
  SUBCASE("neutral drift") {
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 3, 1));
    for (int n : {2, 10, 100}) {
      const EvoParams params{n, 0.0};
      CHECK(std::abs(fixation_probability(D, C, params, m) - 1.0 / n) <= 1e-15);
    }
  }
  SUBCASE("DGCS and DGCN are neutral without social cost") {
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 4, 0));
    const EvoParams params{100, 1.0};
    CHECK(std::abs(fixation_probability(DGCS, DGCN, params, m) - 0.01) <= 1e-12);
    CHECK(std::abs(fixation_probability(DGCN, DGCS, params, m) - 0.01) <= 1e-12);
  }
  SUBCASE("two players") {
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 0, 0));
    const EvoParams params{2, 1.0};
    const double expected = 1.0 / (1.0 + std::exp(-3.0));
    CHECK(fixation_probability(D, C, params, m) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(fixation_probability(D, C, params, m) ==
          doctest::Approx(0.95257).epsilon(1e-5));
  }
}

TEST_CASE("log-space fixation matches the direct product form") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = payoff_matrix(donation_spec(
        2 + 2 * unit(rng), 1, 10, 8 * unit(rng), unit(rng)));
    for (int n : {3, 20, 60, 200}) {
      const EvoParams params{n, 0.5 * unit(rng) + 0.05};
      for (Strategy a : kAllStrategies) {
        for (Strategy b : kAllStrategies) {
          if (a == b) continue;
          const double direct = fixation_by_products(a, b, params, m);
          const double logspace = fixation_probability(a, b, params, m);
          CHECK(logspace >= 0.0);
          CHECK(logspace <= 1.0);
          CHECK(std::abs(direct - logspace) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("fixation stays finite under strong selection") {
  const auto m = payoff_matrix(donation_spec(4, 1, 10, 0, 0));
  const EvoParams params{1000, 50.0};
  const double rho = fixation_probability(C, D, params, m);
  CHECK(rho >= 0.0);
  CHECK(rho < 1e-300);
  const double back = fixation_probability(D, C, params, m);
  CHECK(back == doctest::Approx(1.0));
}

TEST_CASE("markov model construction") {
  SUBCASE("identical payoff rows give a uniform distribution") {
    // DGCS and DGCN earn the same against each other without social cost.
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 2, 0));
    const auto model = build_markov({DGCS, DGCN}, {100, 1.0}, m);
    CHECK(model.stationary[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.stationary[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("neutral two-strategy chain") {
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 2, 0));
    const auto model = build_markov({C, D}, {40, 0.0}, m);
    CHECK(std::abs(model.transition[0][1] - 1.0 / 40) <= 1e-15);
    CHECK(std::abs(model.transition[1][0] - 1.0 / 40) <= 1e-15);
  }
  SUBCASE("rejects degenerate strategy lists") {
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 2, 0));
    CHECK_THROWS_AS(build_markov({C}, {40, 1.0}, m), ValidationError);
    CHECK_THROWS_AS(build_markov({C, C}, {40, 1.0}, m), ValidationError);
  }
}

TEST_CASE("stationary distribution invariants") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<Strategy> all(kAllStrategies.begin(), kAllStrategies.end());
  for (int trial = 0; trial < 25; ++trial) {
    const auto m = payoff_matrix(donation_spec(
        2 + 3 * unit(rng), 1, 1 + static_cast<int>(15 * unit(rng)),
        8 * unit(rng), unit(rng)));
    const auto model = build_markov(all, {100, unit(rng) * 2}, m);
    const auto& pi = model.stationary;
    CHECK(std::accumulate(pi.begin(), pi.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < pi.size(); ++i) {
      CHECK(pi[i] >= 0.0);
      double row = 0.0;
      for (double t : model.transition[i]) row += t;
      CHECK(std::abs(row - 1.0) <= 1e-12);
      for (std::size_t j = 0; j < pi.size(); ++j) {
        if (i != j) {
          CHECK(model.transition[i][j] == model.fixation[i][j] / 5.0);
        }
      }
    }
    for (std::size_t j = 0; j < pi.size(); ++j) {
      double flow = 0.0;
      for (std::size_t i = 0; i < pi.size(); ++i) {
        flow += pi[i] * model.transition[i][j];
      }
      CHECK(std::abs(flow - pi[j]) <= 1e-10);
    }
    const auto power = stationary_power(model.transition);
    for (std::size_t i = 0; i < pi.size(); ++i) {
      CHECK(std::abs(power[i] - pi[i]) <= 1e-8);
    }
  }
}

TEST_CASE("singular stationarity system is reported") {
  // Two absorbing states: no unique stationary vector.
  const std::vector<std::vector<double>> t = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(stationary_linear(t), SingularSystemError);
}

TEST_CASE("transition directions") {
  const std::vector<Strategy> all(kAllStrategies.begin(), kAllStrategies.end());
  SUBCASE("defection beats cooperation, DGCN loses to D") {
    const auto model =
        build_markov(all, {100, 1.0}, payoff_matrix(donation_spec(2, 1, 10, 1, 0.5)));
    const auto edges = transition_directions(model);
    CHECK(edge(edges, C, D));
    CHECK_FALSE(edge(edges, D, C));
    CHECK(edge(edges, DGCN, D));
    CHECK(edge(edges, DGCS, DGCN));
    for (const auto& e : edges) CHECK(e.from != e.to);
  }
  SUBCASE("ties give no edge") {
    const auto model =
        build_markov(all, {100, 1.0}, payoff_matrix(donation_spec(2, 1, 10, 1, 0)));
    const auto edges = transition_directions(model);
    CHECK_FALSE(edge(edges, DGCS, DGCN));
    CHECK_FALSE(edge(edges, DGCN, DGCS));
  }
}

TEST_CASE("risk dominance") {
  SUBCASE("DGCS against DGDS") {
    const auto m = payoff_matrix(donation_spec(2, 1, 10, 1, 0.5));
    CHECK(risk_dominant(DGCS, DGDS, m) == Dominance::First);
    CHECK(risk_dominant(DGDS, DGCS, m) == Dominance::Second);
  }
  SUBCASE("DGCS against D") {
    const auto m = payoff_matrix(donation_spec(4, 1, 10, 7, 0));
    CHECK(risk_dominant(DGCS, D, m) == Dominance::First);
  }
  SUBCASE("a strategy against itself") {
    const auto m = payoff_matrix(donation_spec(4, 1, 10, 7, 0.2));
    for (Strategy s : kAllStrategies) {
      CHECK(risk_dominant(s, s, m) == Dominance::Neutral);
    }
  }
}

TEST_CASE("closed-form conditions") {
  SUBCASE("worked example") {
    const auto report =
        closed_form_conditions(donation_spec(2, 1, 10, 4, 0), {2, 1});
    std::map<std::string, Dominance> v;
    for (const auto& c : report.conditions) v[c.name] = c.verdict;
    CHECK(v["DGCS_vs_DGDS"] == Dominance::First);
    CHECK(v["DGCS_vs_DGDN"] == Dominance::First);
    CHECK(v["DGCS_vs_D"] == Dominance::First);
    CHECK(v["DGCS_vs_C"] == Dominance::Second);
    CHECK(v["DGCS_vs_DGCN"] == Dominance::Neutral);
    CHECK(v["DGCN_vs_D"] == Dominance::Second);
    CHECK_FALSE(report.cyclic);
  }
  SUBCASE("zero costs") {
    const auto report =
        closed_form_conditions(donation_spec(2, 1, 10, 0, 0), {2, 1});
    CHECK_FALSE(report.conditions[0].holds());
  }
  SUBCASE("cycle when DGCS beats D and social cost is positive") {
    const auto report =
        closed_form_conditions(donation_spec(4, 1, 10, 1, 0.5), {4, 1});
    CHECK(report.cyclic);
  }
  SUBCASE("agrees with risk dominance on random grids") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> omega_dist(1, 40);
    int compared = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const double c = 0.2 + 2 * unit(rng);
      const double b = c + 0.05 + 5 * unit(rng);
      const auto spec =
          donation_spec(b, c, omega_dist(rng), 10 * unit(rng), 2 * unit(rng));
      const auto m = payoff_matrix(spec);
      for (const auto& cond : closed_form_conditions(spec, {b, c}).conditions) {
        const double generic = m(cond.first, cond.first) +
                               m(cond.first, cond.second) -
                               m(cond.second, cond.first) -
                               m(cond.second, cond.second);
        if (std::abs(generic) < 1e-9) continue;
        ++compared;
        CHECK(cond.verdict == risk_dominant(cond.first, cond.second, m));
      }
    }
    CHECK(compared > 2000);
  }
}

TEST_CASE("risk dominance predicts large-population fixation direction") {
  const std::vector<Strategy> all(kAllStrategies.begin(), kAllStrategies.end());
  int compared = 0;
  for (double b : {2.0, 4.0}) {
    for (double gs : {0.0, 0.1, 0.5, 1.0}) {
      for (double g : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
        const auto m = payoff_matrix(donation_spec(b, 1, 10, g, gs));
        const EvoParams params{1000, 1.0};
        for (Strategy a : all) {
          for (Strategy o : all) {
            if (index(a) >= index(o)) continue;
            const Dominance rd = risk_dominant(a, o, m);
            if (rd == Dominance::Neutral) continue;
            const double a_invades = fixation_probability(a, o, params, m);
            const double o_invades = fixation_probability(o, a, params, m);
            ++compared;
            CHECK((a_invades > o_invades) == (rd == Dominance::First));
          }
        }
      }
    }
  }
  CHECK(compared > 900);
}
