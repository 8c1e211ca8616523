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

#include "lpgmfg/graph_sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lpgmfg/error.hpp"
#include "lpgmfg/graphon.hpp"
#include "lpgmfg/random.hpp"

namespace lpgmfg {

Placement parse_placement(const std::string& name) {
  if (name == "iid_uniform") return Placement::kIidUniform;
  if (name == "equispaced") return Placement::kEquispaced;
  throw ParameterError("unknown placement '" + name + "' (valid: iid_uniform, equispaced)");
}

std::string to_string(Placement placement) {
  return placement == Placement::kIidUniform ? "iid_uniform" : "equispaced";
}

Adjacency GraphSample::adjacency() const {
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++adj.offsets[u + 1];
    ++adj.offsets[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) adj.offsets[i + 1] += adj.offsets[i];
  adj.neighbors.resize(adj.offsets[n]);
  std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    adj.neighbors[fill[u]++] = v;
    adj.neighbors[fill[v]++] = u;
  }
  return adj;
}

GraphSample sample_graph(const Graphon& w, std::size_t n, double beta, Placement placement,
                         std::uint64_t seed, std::optional<double> rho_override) {
  if (n < 1) throw ParameterError("vertex count must be >= 1");
  if (n > (std::size_t{1} << 31)) throw ParameterError("vertex count too large");
  GraphSample g;
  g.n = n;
  if (rho_override) {
    if (!(*rho_override > 0.0)) throw ParameterError("rho must be > 0");
    g.rho = *rho_override;
  } else {
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0,1)");
    g.rho = std::pow(static_cast<double>(n), -beta);
  }

  Rng rng(seed);
  g.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.positions[i] = placement == Placement::kIidUniform
                         ? rng.uniform()
                         : static_cast<double>(i + 1) / static_cast<double>(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = g.positions[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = std::min(g.rho * w.eval(xi, g.positions[j]), 1.0);
      // One draw per pair keeps the stream layout independent of W.
      if (rng.uniform() < p)
        g.edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return g;
}

std::map<std::size_t, std::size_t> degree_histogram(const GraphSample& g) {
  std::vector<std::size_t> degree(g.n, 0);
  for (const auto& [u, v] : g.edges) {
    ++degree[u];
    ++degree[v];
  }
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t d : degree) ++hist[d];
  return hist;
}

double edge_density(const GraphSample& g) {
  if (g.n == 0) return 0.0;
  const double n = static_cast<double>(g.n);
  return 2.0 * static_cast<double>(g.edges.size()) / (n * n);
}

std::size_t max_degree(const GraphSample& g) {
  const auto hist = degree_histogram(g);
  return hist.empty() ? 0 : hist.rbegin()->first;
}

void write_edge_list(std::ostream& os, const GraphSample& g) {
  const auto old_precision = os.precision(17);
  os << "# n=" << g.n << " rho=" << g.rho << '\n';
  for (std::size_t i = 0; i < g.n; ++i) os << "# pos " << i << ' ' << g.positions[i] << '\n';
  for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
  os.precision(old_precision);
}

GraphSample read_edge_list(std::istream& is) {
  GraphSample g;
  std::string line;
  bool header = false;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string& what) {
    throw ParameterError("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line.rfind("# n=", 0) == 0) {
      if (std::sscanf(line.c_str(), "# n=%zu rho=%lf", &g.n, &g.rho) != 2) fail("bad header");
      g.positions.assign(g.n, 0.0);
      header = true;
    } else if (line.rfind("# pos", 0) == 0) {
      std::string hash, pos;
      std::size_t i;
      double x;
      if (!header || !(ls >> hash >> pos >> i >> x) || i >= g.n) fail("bad position line");
      g.positions[i] = x;
    } else if (line[0] == '#') {
      continue;
    } else {
      std::uint32_t u, v;
      if (!header || !(ls >> u >> v) || u >= g.n || v >= g.n || u == v) fail("bad edge");
      g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  if (!header) throw ParameterError("edge list has no '# n=' header");
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

}  // namespace lpgmfg
