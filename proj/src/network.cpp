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

#include "guiltnet/network.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace guiltnet {

std::string_view topology_name(Topology t) {
  switch (t) {
    case Topology::Complete:
      return "wellmixed";
    case Topology::Lattice:
      return "lattice";
    case Topology::ScaleFree:
      return "scalefree";
    case Topology::Custom:
      return "custom";
  }
  return "unknown";
}

Network::Network(std::size_t num_nodes,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                 Topology topology, std::uint64_t seed)
    : topology_(topology), seed_(seed) {
  if (num_nodes > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("too many nodes");
  }
  std::vector<std::size_t> degree(num_nodes, 0);
  for (auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      throw std::invalid_argument("edge endpoint out of range: " +
                                  std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
    ++degree[u];
    ++degree[v];
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  offsets_.assign(num_nodes + 1, 0);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    offsets_[i + 1] = offsets_[i] + degree[i];
  }
  targets_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    targets_[fill[u]++] = v;
    targets_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

bool Network::adjacent(std::size_t u, std::size_t v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(v));
}

bool Network::connected() const {
  const std::size_t n = size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack = {0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t v : neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Network::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < size(); ++u) {
    for (std::uint32_t v : neighbors(u)) {
      if (u < v) out.emplace_back(static_cast<std::uint32_t>(u), v);
    }
  }
  return out;
}

Network build_lattice(int side) {
  if (side < 3) {
    throw std::invalid_argument("lattice side must be >= 3, got " +
                                std::to_string(side));
  }
  const auto l = static_cast<std::uint32_t>(side);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(2 * static_cast<std::size_t>(l) * l);
  for (std::uint32_t r = 0; r < l; ++r) {
    for (std::uint32_t c = 0; c < l; ++c) {
      const std::uint32_t node = r * l + c;
      edges.emplace_back(node, r * l + (c + 1) % l);    // right
      edges.emplace_back(node, ((r + 1) % l) * l + c);  // down
    }
  }
  return Network(static_cast<std::size_t>(l) * l, std::move(edges),
                 Topology::Lattice);
}

void BaSpec::validate() const {
  if (m < 1) throw std::invalid_argument("m >= 1 violated");
  if (m0 < m) throw std::invalid_argument("m0 >= m violated");
  if (m0 < 2) throw std::invalid_argument("m0 >= 2 violated");
  if (N <= m0) throw std::invalid_argument("N > m0 violated");
}

Network build_scale_free(const BaSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  // Every edge endpoint appears once, so a uniform draw is degree-weighted.
  std::vector<std::uint32_t> pool;
  for (std::uint32_t u = 0; u < static_cast<std::uint32_t>(spec.m0); ++u) {
    for (std::uint32_t v = u + 1; v < static_cast<std::uint32_t>(spec.m0);
         ++v) {
      edges.emplace_back(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }
  std::vector<std::uint32_t> targets;
  for (std::uint32_t node = static_cast<std::uint32_t>(spec.m0);
       node < static_cast<std::uint32_t>(spec.N); ++node) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    while (targets.size() < static_cast<std::size_t>(spec.m)) {
      const std::uint32_t t = pool[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (std::uint32_t t : targets) {
      edges.emplace_back(t, node);
      pool.push_back(t);
      pool.push_back(node);
    }
  }
  return Network(static_cast<std::size_t>(spec.N), std::move(edges),
                 Topology::ScaleFree, spec.seed);
}

Network build_complete(int n) {
  if (n < 2) {
    throw std::invalid_argument("complete graph needs N >= 2, got " +
                                std::to_string(n));
  }
  const auto count = static_cast<std::uint32_t>(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(count) * (count - 1) / 2);
  for (std::uint32_t u = 0; u < count; ++u) {
    for (std::uint32_t v = u + 1; v < count; ++v) edges.emplace_back(u, v);
  }
  return Network(count, std::move(edges), Topology::Complete);
}

DegreeSummary degree_summary(const Network& net) {
  DegreeSummary s;
  if (net.size() == 0) return s;
  s.min = std::numeric_limits<std::size_t>::max();
  for (std::size_t u = 0; u < net.size(); ++u) {
    const std::size_t d = net.degree(u);
    s.min = std::min(s.min, d);
    s.max = std::max(s.max, d);
    if (s.histogram.size() <= d) s.histogram.resize(d + 1, 0);
    ++s.histogram[d];
  }
  s.mean = 2.0 * static_cast<double>(net.num_edges()) /
           static_cast<double>(net.size());
  return s;
}

void write_edge_list(std::ostream& out, const Network& net) {
  for (const auto& [u, v] : net.edges()) out << u << ' ' << v << '\n';
}

Network read_edge_list(std::istream& in, std::size_t num_nodes) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::size_t max_index = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest) || u < 0 || v < 0 ||
        u > std::numeric_limits<std::uint32_t>::max() ||
        v > std::numeric_limits<std::uint32_t>::max()) {
      throw std::invalid_argument("malformed edge on line " +
                                  std::to_string(line_no));
    }
    edges.emplace_back(static_cast<std::uint32_t>(u),
                       static_cast<std::uint32_t>(v));
    max_index = std::max<std::size_t>(max_index, std::max(u, v));
    any = true;
  }
  const std::size_t n = num_nodes != 0 ? num_nodes : (any ? max_index + 1 : 0);
  return Network(n, std::move(edges), Topology::Custom);
}

}  // namespace guiltnet
