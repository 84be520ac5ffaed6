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

#include "guiltnet/wellmixed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace guiltnet {

namespace {

using Table = std::vector<std::vector<double>>;

void check_occupancy(int k, const EvoParams& params) {
  if (k < 1 || k > params.N - 1) {
    throw std::out_of_range("group payoff needs 1 <= k <= N - 1, got k = " +
                            std::to_string(k));
  }
}

Eigen::MatrixXd to_eigen(const Table& t) {
  const auto q = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    if (static_cast<Eigen::Index>(t[i].size()) != q) {
      throw std::invalid_argument("transition matrix must be square");
    }
    for (Eigen::Index j = 0; j < q; ++j) m(i, j) = t[i][j];
  }
  return m;
}

std::vector<double> normalized(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  for (double& x : out) x = std::max(x, 0.0);
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= total;
  return out;
}

}  // namespace

void EvoParams::validate() const {
  if (N < 2) throw ValidationError("N >= 2 violated");
  if (!(beta >= 0) || !std::isfinite(beta)) {
    throw ValidationError("beta >= 0 violated");
  }
}

double fermi_probability(double f_self, double f_other, double beta) {
  const double x = beta * (f_other - f_self);
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double group_payoff_a(Strategy a, Strategy b, int k, const EvoParams& params,
                      const StrategyMatrix& payoff) {
  check_occupancy(k, params);
  const int n = params.N;
  return ((k - 1) * payoff(a, a) + (n - k) * payoff(a, b)) / (n - 1.0);
}

double group_payoff_b(Strategy a, Strategy b, int k, const EvoParams& params,
                      const StrategyMatrix& payoff) {
  check_occupancy(k, params);
  const int n = params.N;
  return (k * payoff(b, a) + (n - k - 1) * payoff(b, b)) / (n - 1.0);
}

StepProbabilities step_probabilities(int k, Strategy a, Strategy b,
                                     const EvoParams& params,
                                     const StrategyMatrix& payoff) {
  params.validate();
  const int n = params.N;
  if (k <= 0 || k >= n) return {};
  const double mix =
      (static_cast<double>(n - k) / n) * (static_cast<double>(k) / n);
  const double pa = group_payoff_a(a, b, k, params, payoff);
  const double pb = group_payoff_b(a, b, k, params, payoff);
  // A B-player copies an A-player, or the reverse.
  return {mix * fermi_probability(pb, pa, params.beta),
          mix * fermi_probability(pa, pb, params.beta)};
}

double fixation_probability(Strategy mutant, Strategy resident,
                            const EvoParams& params,
                            const StrategyMatrix& payoff) {
  params.validate();
  const int n = params.N;
  // log prod_{j<=i} T-(j)/T+(j) = -beta * sum_{j<=i} (Pi_A(j) - Pi_B(j)).
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(n - 1));
  double partial = 0.0;
  for (int j = 1; j <= n - 1; ++j) {
    partial += group_payoff_a(mutant, resident, j, params, payoff) -
               group_payoff_b(mutant, resident, j, params, payoff);
    log_terms.push_back(-params.beta * partial);
  }
  const double top =
      std::max(0.0, *std::max_element(log_terms.begin(), log_terms.end()));
  double sum = std::exp(-top);
  for (double t : log_terms) sum += std::exp(t - top);
  // rho = 1 / (e^top * sum)
  return std::exp(-top) / sum;
}

std::vector<double> stationary_linear(const Table& transition) {
  const Eigen::MatrixXd m = to_eigen(transition);
  const Eigen::Index q = m.rows();
  // pi (M - I) = 0  <=>  (M^T - I) pi^T = 0; last equation replaced by the
  // normalization.
  Eigen::MatrixXd a = m.transpose() - Eigen::MatrixXd::Identity(q, q);
  a.row(q - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
  rhs(q - 1) = 1.0;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw SingularSystemError(
        "stationarity system is singular (rcond = " + std::to_string(rcond) +
            ")",
        rcond);
  }
  return normalized(lu.solve(rhs));
}

std::vector<double> stationary_power(const Table& transition, double tol,
                                     long max_iter) {
  const Eigen::MatrixXd m = to_eigen(transition);
  const Eigen::Index q = m.rows();
  // Squaring doubles the number of applied steps per iteration, which keeps
  // chains with tiny transition probabilities tractable.
  Eigen::MatrixXd power = m;
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(q, 1.0 / q);
  for (long it = 0; it < max_iter; ++it) {
    Eigen::RowVectorXd next = pi * power;
    next /= next.sum();
    const double change = (next - pi).cwiseAbs().maxCoeff();
    pi = next;
    if (change < tol) break;
    power = power * power;
    // Re-normalize rows against drift in the stochastic property.
    for (Eigen::Index i = 0; i < q; ++i) power.row(i) /= power.row(i).sum();
  }
  return normalized(pi.transpose());
}

MarkovModel build_markov(const std::vector<Strategy>& strategies,
                         const EvoParams& params,
                         const StrategyMatrix& payoff) {
  params.validate();
  const std::size_t q = strategies.size();
  if (q < 2) throw ValidationError("need at least two strategies");
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = i + 1; j < q; ++j) {
      if (strategies[i] == strategies[j]) {
        throw ValidationError("strategies must be distinct");
      }
    }
  }
  MarkovModel model;
  model.strategies = strategies;
  model.fixation.assign(q, std::vector<double>(q, 0.0));
  model.transition.assign(q, std::vector<double>(q, 0.0));
  for (std::size_t i = 0; i < q; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      if (i == j) continue;
      const double rho =
          fixation_probability(strategies[j], strategies[i], params, payoff);
      model.fixation[i][j] = rho;
      model.transition[i][j] = rho / static_cast<double>(q - 1);
      off += model.transition[i][j];
    }
    model.transition[i][i] = 1.0 - off;
  }
  model.stationary = stationary_linear(model.transition);

  // Stationarity residual check.
  double worst = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      acc += model.stationary[i] * model.transition[i][j];
    }
    worst = std::max(worst, std::abs(acc - model.stationary[j]));
  }
  if (worst > 1e-10) {
    throw SingularSystemError("stationary residual " + std::to_string(worst) +
                                  " exceeds 1e-10",
                              0.0);
  }
  return model;
}

std::vector<Edge> transition_directions(const MarkovModel& model) {
  std::vector<Edge> edges;
  const std::size_t q = model.size();
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      if (i != j && model.fixation[i][j] > model.fixation[j][i]) {
        edges.push_back({model.strategies[i], model.strategies[j]});
      }
    }
  }
  return edges;
}

Dominance risk_dominant(Strategy a, Strategy b, const StrategyMatrix& payoff) {
  const double lhs = payoff(a, a) + payoff(a, b);
  const double rhs = payoff(b, a) + payoff(b, b);
  if (lhs > rhs) return Dominance::First;
  if (lhs < rhs) return Dominance::Second;
  return Dominance::Neutral;
}

ClosedFormReport closed_form_conditions(const GameSpec& spec,
                                        const DonationParams& donation) {
  donation.validate();
  spec.guilt.validate();
  if (spec.omega < 1) throw ValidationError("omega >= 1 violated");
  const double b = donation.b;
  const double c = donation.c;
  const double g = spec.guilt.gamma;
  const double gs = spec.guilt.gamma_s;
  const double omega = spec.omega;
  const double theta = omega - 1.0;

  const auto verdict = [](double margin) {
    if (margin > 0) return Dominance::First;
    if (margin < 0) return Dominance::Second;
    return Dominance::Neutral;
  };
  const auto cond = [&](std::string label, Strategy first, Strategy second,
                        double margin) {
    return ClosedFormReport::Condition{std::move(label), first, second, margin,
                                       verdict(margin)};
  };

  using enum Strategy;
  ClosedFormReport report;
  // gamma + gamma_s > c (times the rounds after the first).
  report.conditions.push_back(
      cond("DGCS_vs_DGDS", DGCS, DGDS, 2.0 * theta * (g + gs - c)));
  report.conditions.push_back(cond("DGCS_vs_C", DGCS, C, 2.0 * (c - g - gs)));
  report.conditions.push_back(
      cond("DGCS_vs_DGDN", DGCS, DGDN, 2.0 * (theta * g - gs - theta * c)));
  report.conditions.push_back(
      cond("DGCS_vs_D", DGCS, D, theta * (b - c) - g - (omega + 1.0) * gs));
  report.conditions.push_back(cond("DGCS_vs_DGCN", DGCS, DGCN, -2.0 * gs));
  report.conditions.push_back(
      cond("DGCN_vs_D", DGCN, D, -2.0 * g - 2.0 * theta * c));
  report.cyclic = report.conditions[3].holds() && gs > 0;
  return report;
}

}  // namespace guiltnet
