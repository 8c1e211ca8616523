// Copyright 2026 The lpgmfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LPGMFG_GRAPH_SAMPLE_HPP_
#define LPGMFG_GRAPH_SAMPLE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lpgmfg {

class Graphon;

enum class Placement { kIidUniform, kEquispaced };

Placement parse_placement(const std::string& name);
std::string to_string(Placement placement);

// Compressed neighbor lists, built on demand from an edge list.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> neighbors;

  std::span<const std::uint32_t> of(std::size_t v) const {
    return {neighbors.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
  std::size_t degree(std::size_t v) const { return offsets[v + 1] - offsets[v]; }
};

// Finite simple graph with graphon coordinates per vertex. Edges are stored
// as sorted pairs (u < v) without duplicates.
struct GraphSample {
  std::size_t n = 0;
  std::vector<double> positions;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  double rho = 1.0;

  std::size_t num_edges() const { return edges.size(); }
  Adjacency adjacency() const;
};

// Samples G(n, W, rho_n) with rho_n = n^(-beta): vertex i sits at x_i
// (i.i.d. uniform, or i/n for equispaced) and each pair i < j is joined
// independently with probability min{rho_n W(x_i, x_j), 1}. `rho_override`
// replaces rho_n (beta is then ignored).
GraphSample sample_graph(const Graphon& w, std::size_t n, double beta, Placement placement,
                         std::uint64_t seed, std::optional<double> rho_override = std::nullopt);

// degree -> number of vertices with that degree.
std::map<std::size_t, std::size_t> degree_histogram(const GraphSample& g);

// 2|E| / n^2.
double edge_density(const GraphSample& g);

std::size_t max_degree(const GraphSample& g);

// Plain-text edge list: "# n=<N> rho=<rho>", then "# pos i x_i" per vertex,
// then "u v" per edge (0-indexed).
void write_edge_list(std::ostream& os, const GraphSample& g);
GraphSample read_edge_list(std::istream& is);

}  // namespace lpgmfg

#endif  // LPGMFG_GRAPH_SAMPLE_HPP_
