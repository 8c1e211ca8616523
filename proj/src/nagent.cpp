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

#include "lpgmfg/nagent.hpp"

#include <algorithm>
#include <cmath>

#include "lpgmfg/error.hpp"
#include "lpgmfg/parallel.hpp"
#include "lpgmfg/random.hpp"

namespace lpgmfg {

std::size_t class_of_position(double position, std::size_t classes) {
  if (!(position >= 0.0 && position <= 1.0)) throw DomainError("agent position outside [0,1]");
  const auto k = static_cast<std::size_t>(std::floor(position * static_cast<double>(classes)));
  return std::min(k, classes - 1);
}

AgentPolicies lift_policy(const PolicyEnsemble& pi, std::span<const double> positions) {
  if (pi.classes() < 1) throw ShapeError("policy ensemble has no classes");
  AgentPolicies agents{std::vector<std::size_t>(positions.size()), pi};
  for (std::size_t i = 0; i < positions.size(); ++i)
    agents.agent_class[i] = class_of_position(positions[i], pi.classes());
  return agents;
}

std::vector<double> SimulationRun::empirical(std::size_t t) const {
  std::vector<double> out(states);
  for (std::size_t x = 0; x < states; ++x) out[x] = empirical(t, x);
  return out;
}

SimulationRun simulate_episode(const Environment& env, const GraphSample& graph,
                               const AgentPolicies& agents, std::uint64_t seed) {
  const std::size_t n = graph.n, nx = env.num_states(), horizon = env.horizon();
  if (agents.size() != n) throw ShapeError("agent policy count != graph size");
  if (agents.policy.horizon() != horizon || agents.policy.states() != nx ||
      agents.policy.actions() != env.num_actions())
    throw ShapeError("agent policy shape does not match the environment");

  SimulationRun run{graph, agents.agent_class, nx, std::vector<std::size_t>((horizon + 1) * nx, 0),
                    std::nullopt, seed};
  Rng rng(seed);
  const Adjacency adj = graph.adjacency();
  const double scale = 1.0 / (static_cast<double>(n) * graph.rho);

  std::vector<std::size_t> state(n), next(n);
  const auto mu0 = env.initial_distribution();
  for (std::size_t i = 0; i < n; ++i) state[i] = rng.categorical(mu0);

  std::vector<double> g(nx), p(nx);
  for (std::size_t t = 0;; ++t) {
    for (std::size_t i = 0; i < n; ++i) ++run.counts[t * nx + state[i]];
    if (t == horizon) break;
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(g.begin(), g.end(), 0.0);
      for (std::uint32_t j : adj.of(i)) g[state[j]] += scale;
      const std::size_t u = rng.categorical(agents.row(i, t, state[i]));
      env.transition(state[i], u, g, p);
      next[i] = rng.categorical(p);
    }
    std::swap(state, next);
  }
  return run;
}

double mu_error(const SimulationRun& run, const MeanFieldEnsemble& mf) {
  if (mf.states() != run.states) throw ShapeError("state counts differ");
  if (mf.times() != run.times()) throw ShapeError("time horizons differ");
  const double inv_m = 1.0 / static_cast<double>(mf.classes());
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < mf.times(); ++t)
    for (std::size_t x = 0; x < run.states; ++x) {
      double limit = 0.0;
      for (std::size_t m = 0; m < mf.classes(); ++m) limit += mf(m, t, x);
      total += std::abs(run.empirical(t, x) - limit * inv_m);
    }
  return total;
}

std::vector<SweepRow> sweep_convergence(const Environment& env, const Graphon& w,
                                        const PolicyEnsemble& pi, const SweepOptions& options) {
  if (options.samples < 2) throw ParameterError("sweep needs at least 2 samples per cell");
  if (options.betas.empty()) throw ParameterError("sweep betas must not be empty");
  if (options.ns.empty()) throw ParameterError("sweep ns must not be empty");
  for (std::size_t n : options.ns)
    if (n < 1) throw ParameterError("sweep ns must be >= 1");

  const auto wd = discretize(w, pi.classes());
  const MeanFieldEnsemble mf = forward(env, pi, wd);

  const std::size_t nb = options.betas.size(), nn = options.ns.size(), k = options.samples;
  std::vector<double> dmu(nb * nn * k, 0.0);
  parallel_for(dmu.size(), options.threads, [&](std::size_t idx) {
    const std::size_t bi = idx / (nn * k), ni = (idx / k) % nn, s = idx % k;
    const std::uint64_t cell_seed = derive_seed(options.base_seed, {bi, ni, s});
    const GraphSample graph = sample_graph(w, options.ns[ni], options.betas[bi], options.placement,
                                           derive_seed(cell_seed, {0}));
    const AgentPolicies agents = lift_policy(pi, graph.positions);
    const SimulationRun run = simulate_episode(env, graph, agents, derive_seed(cell_seed, {1}));
    dmu[idx] = mu_error(run, mf);
  });

  std::vector<SweepRow> rows;
  rows.reserve(nb * nn);
  for (std::size_t bi = 0; bi < nb; ++bi)
    for (std::size_t ni = 0; ni < nn; ++ni) {
      const double* cell = dmu.data() + (bi * nn + ni) * k;
      double mean = 0.0;
      for (std::size_t s = 0; s < k; ++s) mean += cell[s];
      mean /= static_cast<double>(k);
      double var = 0.0;
      for (std::size_t s = 0; s < k; ++s) var += (cell[s] - mean) * (cell[s] - mean);
      var /= static_cast<double>(k - 1);
      rows.push_back({options.betas[bi], options.ns[ni], k, mean,
                      std::sqrt(var / static_cast<double>(k))});
    }
  return rows;
}

}  // namespace lpgmfg
