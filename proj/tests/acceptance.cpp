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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "guiltnet/abm.hpp"
#include "guiltnet/cli.hpp"
#include "guiltnet/game.hpp"
#include "guiltnet/network.hpp"
#include "guiltnet/wellmixed.hpp"

namespace fs = std::filesystem;
using namespace guiltnet;
using enum Strategy;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

GameSpec donation_spec(double b, double c, int omega, double gamma,
                       double gamma_s) {
  GameSpec spec;
  spec.payoffs = donation_payoffs({b, c});
  spec.omega = omega;
  spec.guilt = {gamma, gamma_s};
  return spec;
}

std::vector<Strategy> all_strategies() {
  return {kAllStrategies.begin(), kAllStrategies.end()};
}

bool has_edge(const std::vector<Edge>& edges, Strategy from, Strategy to) {
  return std::find(edges.begin(), edges.end(), Edge{from, to}) != edges.end();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

Verdict matrix_oracle() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> omega_dist(1, 40);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  const int specs = 600;
  for (int i = 0; i < specs; ++i) {
    const double c = 0.05 + 3.0 * unit(rng);
    const double b = c + 0.01 + 6.0 * unit(rng);
    const auto spec = donation_spec(b, c, omega_dist(rng), 12.0 * unit(rng),
                                    3.0 * unit(rng));
    const auto m = payoff_matrix(spec);
    for (Strategy x : kAllStrategies) {
      for (Strategy y : kAllStrategies) {
        const double oracle = simulate_encounter(x, y, spec).focal.average_payoff;
        worst = std::max(worst, std::abs(m(x, y) - oracle));
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return {worst <= 1e-12 && secs < 5.0,
          std::to_string(specs) + " specs, max error " + num(worst) + ", " +
              num(secs) + " s"};
}

Verdict neutral_fixation() {
  const auto payoff = payoff_matrix(donation_spec(3, 1, 10, 2, 0.5));
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  int pairs = 0;
  for (int n : {10, 100, 1000}) {
    const EvoParams params{n, 0.0};
    for (Strategy a : kAllStrategies) {
      for (Strategy b : kAllStrategies) {
        if (a == b) continue;
        worst = std::max(worst, std::abs(fixation_probability(a, b, params,
                                                              payoff) -
                                         1.0 / n));
        ++pairs;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return {worst <= 1e-12 && secs < 1.0 && pairs == 90,
          "30 pairs x 3 sizes, max error " + num(worst) + ", " + num(secs) +
              " s"};
}

Verdict social_neutrality() {
  double worst = 0;
  for (double gamma : {0.5, 1.0, 4.0, 8.0}) {
    for (int n : {10, 100, 1000}) {
      const auto payoff = payoff_matrix(donation_spec(2, 1, 10, gamma, 0));
      const EvoParams params{n, 1.0};
      worst = std::max(
          {worst,
           std::abs(fixation_probability(DGCS, DGCN, params, payoff) - 1.0 / n),
           std::abs(fixation_probability(DGCN, DGCS, params, payoff) - 1.0 / n)});
    }
  }
  return {worst <= 1e-12, "max error " + num(worst)};
}

Verdict closed_form_agreement() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> omega_dist(1, 30);
  const auto start = std::chrono::steady_clock::now();
  int points = 0, agree = 0, compared = 0;
  while (points < 200) {
    const double c = 0.1 + 2.0 * unit(rng);
    const DonationParams donation{c + 0.05 + 5.0 * unit(rng), c};
    GameSpec spec;
    spec.payoffs = donation_payoffs(donation);
    spec.omega = omega_dist(rng);
    spec.guilt = {10.0 * unit(rng), 2.0 * unit(rng)};
    const auto report = closed_form_conditions(spec, donation);
    const auto payoff = payoff_matrix(spec);
    bool near_boundary = false;
    for (const auto& cond : report.conditions) {
      if (std::abs(cond.margin) < 1e-9) near_boundary = true;
    }
    if (near_boundary) continue;
    ++points;
    for (const auto& cond : report.conditions) {
      ++compared;
      if (cond.verdict == risk_dominant(cond.first, cond.second, payoff)) ++agree;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return {agree == compared && secs < 1.0,
          std::to_string(points) + " points, " + std::to_string(agree) + "/" +
              std::to_string(compared) + " verdicts agree, " + num(secs) +
              " s"};
}

Verdict directions_grid() {
  const EvoParams params{100, 1.0};
  const double b = 2, c = 1;
  int cells = 0, matched = 0;
  std::string mismatches;
  for (double gamma_s : {0.0, 0.1, 1.0}) {
    for (double gamma : {0.5, 4.0, 8.0}) {
      const auto model = build_markov(
          all_strategies(), params,
          payoff_matrix(donation_spec(b, c, 10, gamma, gamma_s)));
      const auto edges = transition_directions(model);
      const bool dgcs_beats_d = gamma + 11 * gamma_s < 9 * (b - c);
      const bool ok = has_edge(edges, C, D) && has_edge(edges, DGCN, D) &&
                      has_edge(edges, DGCS, DGCN) == (gamma_s > 0) &&
                      has_edge(edges, D, DGCS) == dgcs_beats_d &&
                      has_edge(edges, DGCS, D) == !dgcs_beats_d;
      ++cells;
      if (ok) {
        ++matched;
      } else {
        mismatches += " (gamma=" + num(gamma) + ", gamma_s=" + num(gamma_s) + ")";
      }
    }
  }
  return {matched == cells, std::to_string(matched) + "/" +
                                std::to_string(cells) + " cells match" +
                                mismatches};
}

Verdict wellmixed_peak() {
  const EvoParams params{100, 1.0};
  auto dgcs_at = [&](double gamma) {
    const auto model = build_markov(
        all_strategies(), params,
        payoff_matrix(donation_spec(2, 1, 10, gamma, 0)));
    return model.stationary[index(DGCS)];
  };
  const double low = dgcs_at(0.2), peak = dgcs_at(1.0), high = dgcs_at(8.0);
  return {peak > low && peak > high, "DGCS at gamma 0.2/1/8: " + num(low) +
                                         " / " + num(peak) + " / " + num(high)};
}

Verdict lattice_dominance() {
  SimConfig config;
  config.steps = 100'000;
  config.window = 10'000;
  config.replicates = 5;
  config.thin = 0;
  config.seed = 1;
  const auto start = std::chrono::steady_clock::now();
  const auto agg = aggregate(run_replicates(
      {build_lattice(30)}, donation_spec(2, 1, 10, 4, 0), config));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const double dgcs = agg.frequency_mean[index(DGCS)];
  return {dgcs > 0.5 && secs < 600,
          "mean DGCS " + num(dgcs) + " (asynchronous updates), " + num(secs) +
              " s"};
}

Verdict wellmixed_consistency() {
  SimConfig config;
  config.steps = 10'000;
  config.window = 1'000;
  config.replicates = 5;
  config.thin = 0;
  config.allowed = {C, D};
  const auto spec = donation_spec(2, 1, 10, 0, 0);
  const auto start = std::chrono::steady_clock::now();
  const auto agg =
      aggregate(run_replicates({build_complete(100)}, spec, config));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const auto model = build_markov({C, D}, EvoParams{100, 1.0}, payoff_matrix(spec));
  const double abm_d = agg.frequency_mean[index(D)];
  return {abm_d > 0.9 && model.stationary[1] > 0.5 && secs < 120,
          "ABM D " + num(abm_d) + ", analytic D " + num(model.stationary[1]) +
              ", " + num(secs) + " s"};
}

Verdict scale_free_structure() {
  const auto start = std::chrono::steady_clock::now();
  int good = 0;
  double lo = 1e9, hi = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BaSpec spec;
    spec.N = 1000;
    spec.m = 2;
    spec.m0 = 3;
    spec.seed = seed;
    const Network net = build_scale_free(spec);
    const double mean = degree_summary(net).mean;
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
    bool symmetric = true;
    for (std::size_t u = 0; u < net.size() && symmetric; ++u) {
      for (std::uint32_t v : net.neighbors(u)) {
        if (v == u || !net.adjacent(v, u)) symmetric = false;
      }
    }
    if (mean >= 3.9 && mean <= 4.0 && symmetric && net.connected()) ++good;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return {good == 20 && secs < 10, std::to_string(good) +
                                       "/20 valid, mean degree in [" + num(lo) +
                                       ", " + num(hi) + "], " + num(secs) +
                                       " s"};
}

Verdict determinism() {
  const fs::path root =
      fs::temp_directory_path() /
      ("guiltnet_acceptance_" + std::to_string(std::random_device{}()));
  cli::SimulateOptions options;
  options.game.gamma = 2;
  options.game.gamma_s = 0.5;
  options.topology = "scalefree";
  options.N = 300;
  options.networks = 3;
  options.steps = 300;
  options.window = 100;
  options.replicates = 6;
  options.seed = 5;
  options.jobs = 2;
  options.timeseries = true;
  std::ostringstream err;
  options.game.out = root / "a";
  int codes = cli::cmd_simulate(options, err);
  options.game.out = root / "b";
  codes += cli::cmd_simulate(options, err);
  // Replaying the written manifest must reproduce the same bytes.
  const std::string manifest = (root / "a" / "manifest.ini").string();
  const std::string out_c = (root / "c").string();
  const char* argv[] = {"guiltnet", "--config", manifest.c_str(), "simulate",
                        "--out", out_c.c_str()};
  std::ostringstream sink;
  codes += cli::run(6, argv, sink, err);

  bool same = codes == 0;
  int files = 0;
  for (const char* name :
       {"run_summary.csv", "aggregate.csv", "timeseries.csv"}) {
    const std::string a = slurp(root / "a" / name);
    same = same && !a.empty() && a == slurp(root / "b" / name) &&
           a == slurp(root / "c" / name);
    ++files;
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return {same, std::to_string(files) + " CSVs compared across 3 runs" +
                    (codes == 0 ? "" : ", nonzero exit: " + err.str())};
}

Verdict clustering() {
  const Network net = build_lattice(30);
  const auto spec = donation_spec(4, 1, 10, 1, 1);
  SimConfig config;
  config.steps = 10'000;
  config.window = 1'000;
  config.thin = 0;

  // Per strategy: summed share and summed same-strategy neighbor fraction
  // over the seeds in which it survives.
  std::array<double, kNumStrategies> share{}, same{};
  std::array<int, kNumStrategies> seen{};
  int mixed = 0;
  for (std::uint64_t seed = 1; seed <= 12 && mixed < 8; ++seed) {
    config.seed = derive_seed(seed, kReplicateStream, 0);
    const auto result = run(net, spec, config);
    const auto present = std::count_if(
        result.final_counts.begin(), result.final_counts.end(),
        [](std::size_t k) { return k > 0; });
    if (present < 2) continue;
    ++mixed;
    for (Strategy s : kAllStrategies) {
      const auto& row = result.final_composition[index(s)];
      if (!guilt_prone(s) || !row.neighbors) continue;
      share[index(s)] += row.share;
      same[index(s)] += (*row.neighbors)[index(s)];
      ++seen[index(s)];
    }
  }
  bool ok = mixed >= 5;
  int survivors = 0;
  std::string detail = std::to_string(mixed) + " mixed seeds;";
  for (Strategy s : kAllStrategies) {
    const int k = seen[index(s)];
    if (k == 0) continue;
    ++survivors;
    const double mean_share = share[index(s)] / k;
    const double mean_same = same[index(s)] / k;
    ok = ok && mean_same >= mean_share;
    detail += " " + std::string(name(s)) + " same " + num(mean_same) +
              " vs share " + num(mean_share);
  }
  if (survivors == 0) detail += " no guilt-prone survivors";
  return {ok && survivors > 0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"matrix-oracle equivalence", matrix_oracle},
      {"neutral fixation", neutral_fixation},
      {"DGCS/DGCN neutrality without social cost", social_neutrality},
      {"closed form vs risk dominance", closed_form_agreement},
      {"well-mixed transition directions", directions_grid},
      {"well-mixed DGCS peak near gamma = c", wellmixed_peak},
      {"lattice DGCS dominance", lattice_dominance},
      {"well-mixed ABM defection", wellmixed_consistency},
      {"scale-free structure", scale_free_structure},
      {"determinism", determinism},
      {"clustering assortment", clustering},
  };
  int failures = 0;
  for (const auto& [label, check] : checks) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS " : "FAIL ") << label << ": " << v.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
