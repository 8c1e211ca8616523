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

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lpgmfg/error.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/graphon.hpp"
#include "lpgmfg/random.hpp"

using namespace lpgmfg;

namespace {

GraphSample with_edges(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  GraphSample g;
  g.n = n;
  for (std::size_t i = 0; i < n; ++i) g.positions.push_back((i + 1.0) / n);
  g.edges = std::move(edges);
  return g;
}

void check_well_formed(const GraphSample& g) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& [u, v] : g.edges) {
    CHECK(u < v);
    CHECK(v < g.n);
    CHECK(seen.insert({u, v}).second);
  }
  CHECK(g.positions.size() == g.n);
  for (double x : g.positions) CHECK((x >= 0.0 && x <= 1.0));
  CHECK(g.rho > 0.0);
}

}  // namespace

TEST_SUITE("graph_sample") {

TEST_CASE("dense override gives the complete graph") {
  const auto g = sample_graph(Graphon::constant(1.0), 4, 0.5, Placement::kIidUniform, 1, 1.0);
  CHECK(g.num_edges() == 6);
  CHECK(g.rho == 1.0);
  CHECK(degree_histogram(g) == std::map<std::size_t, std::size_t>{{3, 4}});
  CHECK(edge_density(g) == 0.75);
  check_well_formed(g);
}

TEST_CASE("zero graphon gives no edges") {
  for (std::size_t n : {1u, 5u, 50u}) {
    const auto g = sample_graph(Graphon::constant(0.0), n, 0.3, Placement::kIidUniform, 7);
    CHECK(g.num_edges() == 0);
    CHECK(edge_density(g) == 0.0);
  }
}

TEST_CASE("sparsity factor and placements") {
  const auto g = sample_graph(Graphon::constant(1.0), 100, 0.5, Placement::kEquispaced, 3);
  CHECK(g.rho == doctest::Approx(0.1).epsilon(1e-15));
  for (std::size_t i = 0; i < 100; ++i) CHECK(g.positions[i] == (i + 1.0) / 100.0);
  check_well_formed(g);

  const auto h = sample_graph(Graphon::constant(1.0), 100, 0.5, Placement::kIidUniform, 3);
  CHECK(h.positions != g.positions);
  check_well_formed(h);

  CHECK_THROWS_AS(sample_graph(Graphon::constant(1.0), 0, 0.5, Placement::kIidUniform, 3),
                  ParameterError);
  CHECK_THROWS_AS(sample_graph(Graphon::constant(1.0), 5, 1.0, Placement::kIidUniform, 3),
                  ParameterError);
  CHECK(parse_placement("equispaced") == Placement::kEquispaced);
  CHECK(to_string(Placement::kIidUniform) == "iid_uniform");
  CHECK_THROWS_AS(parse_placement("grid"), ParameterError);
}

TEST_CASE("mean edge count of a power law graph matches quadrature") {
  // Reference from adaptive quadrature of min(rho W, 1) after the substitution
  // x = s^4 (separate script, scipy dblquad).
  const double rho = 0.029512092266663854;
  const double expected = 14738.679932963567;
  const Graphon w = Graphon::power_law(0.3);
  const int seeds = 200;
  std::vector<double> counts;
  for (int s = 0; s < seeds; ++s) {
    const auto g = sample_graph(w, 1000, 0.51, Placement::kIidUniform, derive_seed(11, {std::uint64_t(s)}));
    if (s == 0) CHECK(g.rho == doctest::Approx(rho).epsilon(1e-14));
    counts.push_back(static_cast<double>(g.num_edges()));
  }
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / seeds;
  double var = 0.0;
  for (double c : counts) var += (c - mean) * (c - mean);
  var /= seeds - 1;
  const double se = std::sqrt(var / seeds);
  CHECK(std::abs(mean - expected) <= 3.0 * se);
}

TEST_CASE("degree histogram and density") {
  CHECK(degree_histogram(with_edges(5, {})) == std::map<std::size_t, std::size_t>{{0, 5}});
  CHECK(degree_histogram(with_edges(3, {{0, 1}, {1, 2}})) ==
        std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}});
  CHECK(edge_density(with_edges(2, {{0, 1}})) == 0.5);
  CHECK(edge_density(with_edges(4, {})) == 0.0);
  CHECK(max_degree(with_edges(3, {{0, 1}, {1, 2}})) == 2);

  const auto g = sample_graph(Graphon::power_law(0.5), 300, 0.4, Placement::kIidUniform, 5);
  const auto hist = degree_histogram(g);
  std::size_t vertices = 0, degree_sum = 0;
  for (const auto& [d, c] : hist) {
    vertices += c;
    degree_sum += d * c;
  }
  CHECK(vertices == g.n);
  CHECK(degree_sum == 2 * g.num_edges());
}

TEST_CASE("adjacency lists every edge in both directions") {
  const auto g = sample_graph(Graphon::power_law(0.5), 200, 0.3, Placement::kIidUniform, 8);
  const Adjacency adj = g.adjacency();
  std::size_t total = 0;
  for (std::size_t v = 0; v < g.n; ++v) total += adj.degree(v);
  CHECK(total == 2 * g.num_edges());
  for (const auto& [u, v] : g.edges) {
    const auto nu = adj.of(u);
    CHECK(std::find(nu.begin(), nu.end(), v) != nu.end());
  }
}

TEST_CASE("property: sampling is deterministic given the seed") {
  const Graphon w = Graphon::cutoff_power_law(0.6, 0.05);
  for (auto placement : {Placement::kIidUniform, Placement::kEquispaced}) {
    const auto a = sample_graph(w, 400, 0.5, placement, 2024);
    const auto b = sample_graph(w, 400, 0.5, placement, 2024);
    const auto c = sample_graph(w, 400, 0.5, placement, 2025);
    CHECK(a.edges == b.edges);
    CHECK(a.positions == b.positions);
    CHECK(a.edges != c.edges);
    check_well_formed(a);
  }
}

TEST_CASE("property: power law graphs have heavier degree tails than matched random graphs") {
  const std::size_t n = 2000;
  const double rho = std::pow(static_cast<double>(n), -0.5);
  const Graphon w = Graphon::power_law(0.7);
  // Edge probability of the matched Erdos-Renyi graph: midpoint quadrature of
  // min(rho W, 1), refined near the singular corner.
  double density = 0.0;
  const int q = 4000;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      density += std::min(rho * w.eval((i + 0.5) / q, (j + 0.5) / q), 1.0);
  density /= static_cast<double>(q) * q;
  const Graphon er = Graphon::constant(density);
  int wins = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto pl = sample_graph(w, n, 0.5, Placement::kIidUniform, derive_seed(1, {s}), rho);
    const auto flat = sample_graph(er, n, 0.5, Placement::kIidUniform, derive_seed(2, {s}), 1.0);
    if (max_degree(pl) > max_degree(flat)) ++wins;
  }
  CHECK(wins >= 95);
}

TEST_CASE("edge list round trip") {
  const auto g = sample_graph(Graphon::power_law(0.5), 50, 0.3, Placement::kIidUniform, 4);
  std::stringstream ss;
  write_edge_list(ss, g);
  const std::string text = ss.str();
  CHECK(text.rfind("# n=50 rho=", 0) == 0);
  CHECK(text.find("# pos 0 ") != std::string::npos);
  const auto back = read_edge_list(ss);
  CHECK(back.n == g.n);
  CHECK(back.rho == g.rho);
  CHECK(back.positions == g.positions);
  CHECK(back.edges == g.edges);

  std::istringstream bad("# n=2 rho=1\n0 5\n");
  CHECK_THROWS_AS(read_edge_list(bad), ParameterError);
}

}  // TEST_SUITE
