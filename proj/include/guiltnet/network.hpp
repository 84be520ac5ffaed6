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

#ifndef GUILTNET_NETWORK_HPP_
#define GUILTNET_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace guiltnet {

enum class Topology { Complete, Lattice, ScaleFree, Custom };

std::string_view topology_name(Topology t);

// Immutable undirected simple graph in compressed adjacency form. Neighbor
// lists are sorted and free of duplicates and self-loops.
class Network {
 public:
  // Builds from an edge list; throws std::invalid_argument on self-loops,
  // duplicate edges or out-of-range endpoints.
  Network(std::size_t num_nodes,
          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
          Topology topology, std::uint64_t seed = 0);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }
  Topology topology() const { return topology_; }
  std::uint64_t seed() const { return seed_; }

  std::span<const std::uint32_t> neighbors(std::size_t node) const {
    return {targets_.data() + offsets_[node],
            targets_.data() + offsets_[node + 1]};
  }
  std::size_t degree(std::size_t node) const {
    return offsets_[node + 1] - offsets_[node];
  }

  bool adjacent(std::size_t u, std::size_t v) const;
  bool connected() const;

  // Sorted (u < v) edge list.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
  Topology topology_;
  std::uint64_t seed_;
};

// L x L torus with von Neumann neighborhoods, row-major node indices.
Network build_lattice(int side);

struct BaSpec {
  int N = 1000;
  int m = 2;
  int m0 = 3;  // initial clique size
  std::uint64_t seed = 1;

  void validate() const;
};

// Growth with degree-proportional attachment to m distinct older nodes,
// starting from an m0-clique.
Network build_scale_free(const BaSpec& spec);

Network build_complete(int n);

struct DegreeSummary {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  std::vector<std::size_t> histogram;  // histogram[k] = nodes of degree k
};

DegreeSummary degree_summary(const Network& net);

// "u v" per line, 0-based, u < v, lexicographic order.
void write_edge_list(std::ostream& out, const Network& net);

// Reads the format produced by write_edge_list. Blank lines and lines starting
// with '#' are skipped. The node count is one past the largest index unless
// `num_nodes` is given.
Network read_edge_list(std::istream& in, std::size_t num_nodes = 0);

}  // namespace guiltnet

#endif  // GUILTNET_NETWORK_HPP_
