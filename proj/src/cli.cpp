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

#include "guiltnet/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <utility>

#include "guiltnet/format.hpp"
#include "guiltnet/parallel.hpp"
#include "guiltnet/wellmixed.hpp"

namespace guiltnet::cli {

namespace {

using Settings = std::vector<std::pair<std::string, std::string>>;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return format_double(v); }

std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string freq_header(const std::string& prefix) {
  std::vector<std::string> cols;
  for (Strategy s : kAllStrategies) cols.push_back(prefix + std::string(name(s)));
  return join(cols);
}

// Buffers every output file and commits them together once the command has
// finished computing.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::ostringstream& file(const std::string& name) {
    for (auto& [n, s] : files_) {
      if (n == name) return *s;
    }
    files_.emplace_back(name, std::make_unique<std::ostringstream>());
    return *files_.back().second;
  }

  void commit() const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      throw IoError("cannot create output directory " + dir_.string() + ": " +
                    ec.message());
    }
    for (const auto& [name, body] : files_) {
      const auto path = dir_ / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << body->str();
      out.flush();
      if (!out) throw IoError("cannot write " + path.string());
    }
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::unique_ptr<std::ostringstream>>>
      files_;
};

GameSpec game_spec(const GameOptions& g, double b, double gamma,
                   double gamma_s) {
  GameSpec spec;
  spec.payoffs = donation_payoffs({b, g.c});
  spec.omega = g.omega;
  spec.guilt = {gamma, gamma_s};
  spec.validate();
  return spec;
}

GameSpec game_spec(const GameOptions& g) {
  return game_spec(g, g.b, g.gamma, g.gamma_s);
}

std::vector<Strategy> strategies_of(const GameOptions& g) {
  auto list = parse_strategy_list(g.strategies);
  if (list.empty()) throw ValidationError("strategy list is empty");
  return list;
}

Settings game_settings(const GameOptions& g) {
  return {{"b", fmt(g.b)},           {"c", fmt(g.c)},
          {"gamma", fmt(g.gamma)},   {"gamma-s", fmt(g.gamma_s)},
          {"omega", std::to_string(g.omega)},
          {"beta", fmt(g.beta)},     {"strategies", g.strategies}};
}

// Topology-resolved simulation plan.
struct SimPlan {
  Topology topology = Topology::Lattice;
  int nodes = 0;
  SimConfig config;
  BaSpec ba;
  int networks = 1;
};

Topology parse_topology(const std::string& t) {
  if (t == "wellmixed") return Topology::Complete;
  if (t == "lattice") return Topology::Lattice;
  if (t == "scalefree") return Topology::ScaleFree;
  throw ValidationError("topology must be wellmixed, lattice or scalefree, got '" +
                        t + "'");
}

SimPlan plan_for(const SimulateOptions& o, Topology topology) {
  SimPlan plan;
  plan.topology = topology;
  switch (topology) {
    case Topology::Complete:
      plan.nodes = o.N > 0 ? o.N : 100;
      if (plan.nodes < 2) throw ValidationError("N >= 2 violated");
      break;
    case Topology::Lattice:
      if (o.L < 3) throw ValidationError("L >= 3 violated");
      plan.nodes = o.L * o.L;
      break;
    case Topology::ScaleFree:
      plan.nodes = o.N > 0 ? o.N : 1000;
      plan.ba.N = plan.nodes;
      plan.ba.m = o.m;
      plan.ba.m0 = o.m0 > 0 ? o.m0 : o.m + 1;
      plan.ba.seed = o.seed;
      try {
        plan.ba.validate();
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      if (o.networks < 1) throw ValidationError("networks >= 1 violated");
      plan.networks = o.networks;
      break;
    case Topology::Custom:
      throw ValidationError("custom topology is not available here");
  }
  if (o.N < 0) throw ValidationError("N >= 0 violated");
  if (o.jobs < 1) throw ValidationError("jobs >= 1 violated");
  SimConfig& c = plan.config;
  c.steps = o.steps;
  c.window = o.window;
  c.replicates = o.replicates > 0 ? o.replicates
                 : topology == Topology::ScaleFree ? 20
                                                   : 30;
  if (o.replicates < 0) throw ValidationError("replicates >= 1 violated");
  c.beta = o.game.beta;
  if (o.update == "sync") {
    c.update = UpdateRule::Synchronous;
  } else if (o.update == "async") {
    c.update = UpdateRule::Asynchronous;
  } else {
    throw ValidationError("update must be sync or async, got '" + o.update +
                          "'");
  }
  c.allowed = strategies_of(o.game);
  c.seed = o.seed;
  c.thin = o.timeseries ? o.thin : 0;
  if (o.thin < 0) throw ValidationError("thin >= 0 violated");
  c.validate();
  return plan;
}

// Networks for one plan. Scale-free networks use seeds seed, seed + 1, ...
std::vector<Network> materialize(const SimPlan& plan) {
  std::vector<Network> nets;
  switch (plan.topology) {
    case Topology::Complete:
      nets.push_back(build_complete(plan.nodes));
      break;
    case Topology::Lattice:
      nets.push_back(build_lattice(static_cast<int>(
          std::lround(std::sqrt(static_cast<double>(plan.nodes))))));
      break;
    case Topology::ScaleFree:
      for (int k = 0; k < plan.networks; ++k) {
        BaSpec spec = plan.ba;
        spec.seed = plan.ba.seed + static_cast<std::uint64_t>(k);
        nets.push_back(build_scale_free(spec));
      }
      break;
    case Topology::Custom:
      break;
  }
  return nets;
}

Settings simulate_settings(const SimulateOptions& o) {
  Settings s = game_settings(o.game);
  const Settings more = {
      {"topology", o.topology},
      {"L", std::to_string(o.L)},
      {"N", std::to_string(o.N)},
      {"m", std::to_string(o.m)},
      {"m0", std::to_string(o.m0)},
      {"networks", std::to_string(o.networks)},
      {"steps", std::to_string(o.steps)},
      {"window", std::to_string(o.window)},
      {"replicates", std::to_string(o.replicates)},
      {"seed", format_uint(o.seed)},
      {"update", o.update},
      {"thin", std::to_string(o.thin)},
      {"timeseries", o.timeseries ? "true" : "false"},
  };
  s.insert(s.end(), more.begin(), more.end());
  return s;
}

std::string settings_text(const Settings& s) {
  std::string out;
  for (const auto& [k, v] : s) {
    // Unquoted commas would be read back as arrays.
    const bool quote = v.find(',') != std::string::npos || v.empty();
    out += k + " = " + (quote ? "\"" + v + "\"" : v) + "\n";
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Replayable with `--config manifest.ini`; provenance lives in comments.
void write_manifest(OutputSet& files, const std::string& command,
                    const Settings& settings,
                    const std::vector<std::string>& seed_lines) {
  const std::string body = settings_text(settings);
  auto& out = files.file("manifest.ini");
  out << "# guiltnet " << command << " manifest\n";
  out << "# content_hash = " << content_hash(command + "\n" + body) << '\n';
  out << "# created = " << utc_timestamp() << '\n';
  for (const auto& line : seed_lines) out << "# " << line << '\n';
  out << '[' << command << "]\n" << body;
}

std::vector<std::string> seed_lines(const SimPlan& plan,
                                    const std::vector<Network>& nets) {
  std::vector<std::string> lines;
  for (int r = 0; r < plan.config.replicates; ++r) {
    lines.push_back(
        "replicate " + std::to_string(r) + " seed = " +
        format_uint(derive_seed(plan.config.seed, kReplicateStream,
                                static_cast<std::uint64_t>(r))) +
        " network = " +
        std::to_string(static_cast<std::size_t>(r) % nets.size()));
  }
  if (plan.topology == Topology::ScaleFree) {
    for (std::size_t k = 0; k < nets.size(); ++k) {
      lines.push_back("network " + std::to_string(k) +
                      " seed = " + format_uint(nets[k].seed()));
    }
  }
  return lines;
}

void write_freq_row(std::ostream& out, const StrategyFractions& f) {
  for (double v : f) out << ',' << fmt(v);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SingularSystemError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
}

void add_game_options(CLI::App& app, GameOptions& g) {
  // --config lives on the parent; unknown flags fall through to it.
  app.fallthrough();
  app.add_option("--b", g.b, "Benefit of cooperation")->capture_default_str();
  app.add_option("--c", g.c, "Cost of cooperation")->capture_default_str();
  app.add_option("--gamma", g.gamma, "Guilt cost")->capture_default_str();
  app.add_option("--gamma-s", g.gamma_s, "Social cost of guilt")
      ->capture_default_str();
  app.add_option("--omega", g.omega, "Rounds per encounter")
      ->capture_default_str();
  app.add_option("--beta", g.beta, "Intensity of selection")
      ->capture_default_str();
  app.add_option("--strategies", g.strategies,
                 "Comma-separated strategy subset")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
}

void add_simulate_options(CLI::App& app, SimulateOptions& o) {
  add_game_options(app, o.game);
  app.add_option("--topology", o.topology, "wellmixed | lattice | scalefree")
      ->capture_default_str();
  app.add_option("--L", o.L, "Lattice side")->capture_default_str();
  app.add_option("--N", o.N, "Population size (0: topology default)")
      ->capture_default_str();
  app.add_option("--m", o.m, "Edges per arriving scale-free node")
      ->capture_default_str();
  app.add_option("--m0", o.m0, "Initial clique size (0: m + 1)")
      ->capture_default_str();
  app.add_option("--networks", o.networks, "Pre-seeded scale-free networks")
      ->capture_default_str();
  app.add_option("--steps", o.steps, "Generations per run")
      ->capture_default_str();
  app.add_option("--window", o.window, "Trailing generations averaged")
      ->capture_default_str();
  app.add_option("--replicates", o.replicates,
                 "Replicates (0: 20 scale-free, 30 otherwise)")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  app.add_option("--update", o.update, "sync | async")->capture_default_str();
  app.add_option("--thin", o.thin, "Time-series sampling period")
      ->capture_default_str();
  app.add_flag("--timeseries", o.timeseries, "Write timeseries.csv");
  app.add_flag("--dump-networks", o.dump_networks,
               "Write the edge list of every network used");
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw ValidationError("empty list item");
    const auto last = item.find_last_not_of(" \t");
    const std::string token = item.substr(first, last - first + 1);
    double value = 0.0;
    const auto res =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw ValidationError("not a number: '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

int cmd_analytic(const AnalyticOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const GameSpec spec = game_spec(o.game);
    const DonationParams donation{o.game.b, o.game.c};
    const EvoParams evo{o.N, o.game.beta};
    evo.validate();
    const auto strategies = strategies_of(o.game);
    const StrategyMatrix payoff = payoff_matrix(spec);
    const MarkovModel model = build_markov(strategies, evo, payoff);
    const ClosedFormReport report = closed_form_conditions(spec, donation);

    OutputSet files(o.game.out);
    auto& stationary = files.file("stationary.csv");
    stationary << "strategy,frequency\n";
    for (std::size_t i = 0; i < model.size(); ++i) {
      stationary << name(model.strategies[i]) << ','
                 << fmt(model.stationary[i]) << '\n';
    }
    auto& fixation = files.file("fixation.csv");
    fixation << "resident,mutant,rho\n";
    for (std::size_t i = 0; i < model.size(); ++i) {
      for (std::size_t j = 0; j < model.size(); ++j) {
        if (i == j) continue;
        fixation << name(model.strategies[i]) << ','
                 << name(model.strategies[j]) << ','
                 << fmt(model.fixation[i][j]) << '\n';
      }
    }
    auto& directions = files.file("directions.csv");
    directions << "from,to\n";
    for (const Edge& e : transition_directions(model)) {
      directions << name(e.from) << ',' << name(e.to) << '\n';
    }
    auto& risk = files.file("risk_conditions.csv");
    risk << "condition,holds\n";
    for (const auto& c : report.conditions) {
      risk << c.name << ',' << (c.holds() ? "true" : "false") << '\n';
    }
    risk << "cyclic_DGCS_DGCN_D," << (report.cyclic ? "true" : "false")
         << '\n';
    files.file("payoff_matrix.csv") << payoff.to_csv();
    files.file("coop_matrix.csv") << coop_matrix(spec.omega).to_csv();

    Settings settings = game_settings(o.game);
    settings.emplace_back("N", std::to_string(o.N));
    write_manifest(files, "analytic", settings, {});
    files.commit();
  });
}

int cmd_simulate(const SimulateOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const GameSpec spec = game_spec(o.game);
    const SimPlan plan = plan_for(o, parse_topology(o.topology));
    const std::vector<Network> nets = materialize(plan);
    const auto results = run_replicates(nets, spec, plan.config, o.jobs);
    const Aggregate agg = aggregate(results);

    OutputSet files(o.game.out);
    auto& summary = files.file("run_summary.csv");
    summary << "replicate,seed," << freq_header("freq_") << ",coop\n";
    for (std::size_t r = 0; r < results.size(); ++r) {
      summary << r << ',' << format_uint(results[r].seed);
      write_freq_row(summary, results[r].mean_frequencies);
      summary << ',' << fmt(results[r].mean_cooperation) << '\n';
    }
    auto& agg_out = files.file("aggregate.csv");
    agg_out << "quantity,mean,sd\n";
    for (std::size_t s = 0; s < kNumStrategies; ++s) {
      agg_out << "freq_" << name(kAllStrategies[s]) << ','
              << fmt(agg.frequency_mean[s]) << ',' << fmt(agg.frequency_sd[s])
              << '\n';
    }
    agg_out << "coop," << fmt(agg.cooperation_mean) << ','
            << fmt(agg.cooperation_sd) << '\n';
    if (o.timeseries) {
      auto& ts = files.file("timeseries.csv");
      ts << "replicate,step," << freq_header("freq_") << ",coop\n";
      for (std::size_t r = 0; r < results.size(); ++r) {
        for (const auto& p : results[r].series) {
          ts << r << ',' << p.step;
          write_freq_row(ts, p.frequencies);
          ts << ',' << fmt(p.cooperation) << '\n';
        }
      }
    }
    if (o.dump_networks) {
      for (std::size_t k = 0; k < nets.size(); ++k) {
        std::ostringstream edges;
        write_edge_list(edges, nets[k]);
        files.file("network_" + std::to_string(k) + ".txt") << edges.str();
      }
    }
    write_manifest(files, "simulate", simulate_settings(o),
                   seed_lines(plan, nets));
    files.commit();
  });
}

int cmd_sweep(const SweepOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const auto gammas = parse_real_list(o.gamma_grid);
    const auto gamma_ss = parse_real_list(o.gamma_s_list);
    const auto bs = parse_real_list(o.b_list);
    if (gammas.empty()) throw ValidationError("gamma grid is empty");
    if (gamma_ss.empty()) throw ValidationError("gamma_s list is empty");
    if (bs.empty()) throw ValidationError("b list is empty");
    const bool analytic = o.mode == "analytic";
    if (!analytic && o.mode != "abm") {
      throw ValidationError("mode must be abm or analytic, got '" + o.mode +
                            "'");
    }

    std::vector<std::string> topology_names;
    {
      std::stringstream in(o.sim.topology);
      std::string t;
      while (std::getline(in, t, ',')) {
        if (!t.empty()) topology_names.push_back(t);
      }
    }
    if (analytic) topology_names = {"analytic"};
    if (topology_names.empty()) throw ValidationError("no topology given");

    struct Cell {
      std::string topology;
      double b, gamma, gamma_s;
      GameSpec spec;
    };
    std::vector<Cell> cells;
    for (const auto& topo : topology_names) {
      for (double b : bs) {
        for (double gs : gamma_ss) {
          for (double g : gammas) {
            cells.push_back({topo, b, g, gs, game_spec(o.sim.game, b, g, gs)});
          }
        }
      }
    }

    std::vector<std::string> rows(cells.size());
    const auto strategies = strategies_of(o.sim.game);
    std::string header =
        "topology,b,gamma,gamma_s," + freq_header("freq_") +
        ",coop_mean,coop_sd,replicates\n";

    if (analytic) {
      const EvoParams evo{o.sim.N > 0 ? o.sim.N : 100, o.sim.game.beta};
      evo.validate();
      if (strategies.size() < 2) {
        throw ValidationError("analytic mode needs at least two strategies");
      }
      parallel_for(cells.size(), o.sim.jobs, [&](std::size_t i) {
        const Cell& cell = cells[i];
        const MarkovModel model =
            build_markov(strategies, evo, payoff_matrix(cell.spec));
        const StrategyMatrix coop = coop_matrix(cell.spec.omega);
        StrategyFractions freq{};
        double coop_level = 0.0;
        for (std::size_t k = 0; k < model.size(); ++k) {
          const Strategy s = model.strategies[k];
          freq[index(s)] = model.stationary[k];
          coop_level += model.stationary[k] * coop(s, s);
        }
        std::ostringstream row;
        row << cell.topology << ',' << fmt(cell.b) << ',' << fmt(cell.gamma)
            << ',' << fmt(cell.gamma_s);
        write_freq_row(row, freq);
        row << ',' << fmt(coop_level) << ",0,0\n";
        rows[i] = row.str();
      });
    } else {
      std::map<std::string, std::pair<SimPlan, std::vector<Network>>> setups;
      for (const auto& topo : topology_names) {
        SimPlan plan = plan_for(o.sim, parse_topology(topo));
        std::vector<Network> nets = materialize(plan);
        setups.emplace(topo, std::make_pair(std::move(plan), std::move(nets)));
      }
      std::size_t per_cell = 0;
      for (const auto& [topo, setup] : setups) {
        per_cell = std::max<std::size_t>(
            per_cell, static_cast<std::size_t>(setup.first.config.replicates));
      }
      // Flattened (cell, replicate) tasks share one worker pool.
      std::vector<std::vector<RunResult>> results(cells.size());
      std::vector<std::size_t> reps(cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) {
        reps[i] = static_cast<std::size_t>(
            setups.at(cells[i].topology).first.config.replicates);
        results[i].resize(reps[i]);
      }
      parallel_for(cells.size() * per_cell, o.sim.jobs, [&](std::size_t task) {
        const std::size_t i = task / per_cell;
        const std::size_t r = task % per_cell;
        if (r >= reps[i]) return;
        const auto& [plan, nets] = setups.at(cells[i].topology);
        SimConfig local = plan.config;
        local.seed = derive_seed(plan.config.seed, kReplicateStream, r);
        results[i][r] = run(nets[r % nets.size()], cells[i].spec, local);
      });
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const Aggregate agg = aggregate(results[i]);
        std::ostringstream row;
        row << cells[i].topology << ',' << fmt(cells[i].b) << ','
            << fmt(cells[i].gamma) << ',' << fmt(cells[i].gamma_s);
        write_freq_row(row, agg.frequency_mean);
        row << ',' << fmt(agg.cooperation_mean) << ','
            << fmt(agg.cooperation_sd) << ',' << agg.replicates << '\n';
        rows[i] = row.str();
      }
    }

    OutputSet files(o.sim.game.out);
    auto& sweep = files.file("sweep.csv");
    sweep << header;
    for (const auto& row : rows) sweep << row;
    Settings settings = simulate_settings(o.sim);
    settings.emplace_back("mode", o.mode);
    settings.emplace_back("gamma-grid", o.gamma_grid);
    settings.emplace_back("gamma-s-list", o.gamma_s_list);
    settings.emplace_back("b-list", o.b_list);
    write_manifest(files, "sweep", settings, {});
    files.commit();
  });
}

int cmd_cluster(const ClusterOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const GameSpec spec = game_spec(o.sim.game);
    const Topology topology = parse_topology(o.sim.topology);
    if (topology == Topology::Complete) {
      throw ValidationError(
          "cluster needs a structured topology (lattice or scalefree)");
    }
    SimulateOptions sim = o.sim;
    if (sim.replicates == 0) sim.replicates = 1;
    SimPlan plan = plan_for(sim, topology);
    std::vector<long> snapshots;
    for (double v : parse_real_list(o.snapshots)) {
      if (v != std::floor(v)) throw ValidationError("snapshot steps must be integers");
      snapshots.push_back(static_cast<long>(v));
    }
    if (snapshots.empty()) snapshots.push_back(plan.config.steps);
    plan.config.snapshots = snapshots;
    plan.config.validate();
    const std::vector<Network> nets = materialize(plan);
    const auto results = run_replicates(nets, spec, plan.config, sim.jobs);

    OutputSet files(sim.game.out);
    auto& out = files.file("clusters.csv");
    out << "replicate,step,focal_strategy,population_share,"
        << freq_header("frac_") << '\n';
    for (std::size_t r = 0; r < results.size(); ++r) {
      for (const Snapshot& snap : results[r].snapshots) {
        for (std::size_t s = 0; s < kNumStrategies; ++s) {
          const CompositionRow& row = snap.composition[s];
          if (!row.neighbors) continue;
          out << r << ',' << snap.step << ',' << name(kAllStrategies[s]) << ','
              << fmt(row.share);
          write_freq_row(out, *row.neighbors);
          out << '\n';
        }
      }
    }
    Settings settings = simulate_settings(sim);
    settings.emplace_back("snapshots", o.snapshots);
    write_manifest(files, "cluster", settings, seed_lines(plan, nets));
    files.commit();
  });
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Guilt-prone strategies in evolving populations"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Settings file: key = value lines under [analytic], "
                 "[simulate], [sweep] or [cluster] sections");
  app.allow_config_extras(CLI::config_extras_mode::error);

  AnalyticOptions analytic;
  SimulateOptions simulate;
  SweepOptions sweep;
  ClusterOptions cluster;

  auto* analytic_cmd = app.add_subcommand(
      "analytic", "Well-mixed fixation analysis and stationary distribution");
  add_game_options(*analytic_cmd, analytic.game);
  analytic_cmd->add_option("--N", analytic.N, "Population size")
      ->capture_default_str();

  auto* simulate_cmd =
      app.add_subcommand("simulate", "Agent-based runs on one topology");
  add_simulate_options(*simulate_cmd, simulate);

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Grid over (topology, b, gamma_s, gamma)");
  add_simulate_options(*sweep_cmd, sweep.sim);
  sweep_cmd->add_option("--mode", sweep.mode, "abm | analytic")
      ->capture_default_str();
  sweep_cmd->add_option("--gamma-grid", sweep.gamma_grid, "Guilt costs")
      ->capture_default_str();
  sweep_cmd->add_option("--gamma-s-list", sweep.gamma_s_list, "Social costs")
      ->capture_default_str();
  sweep_cmd->add_option("--b-list", sweep.b_list, "Benefits")
      ->capture_default_str();

  auto* cluster_cmd = app.add_subcommand(
      "cluster", "Neighborhood composition snapshots on structured graphs");
  add_simulate_options(*cluster_cmd, cluster.sim);
  cluster_cmd->add_option("--snapshots", cluster.snapshots,
                          "Comma-separated snapshot steps (default: final)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }

  if (*analytic_cmd) return cmd_analytic(analytic, err);
  if (*simulate_cmd) return cmd_simulate(simulate, err);
  if (*sweep_cmd) return cmd_sweep(sweep, err);
  return cmd_cluster(cluster, err);
}

}  // namespace guiltnet::cli
