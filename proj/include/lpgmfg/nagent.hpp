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

#ifndef LPGMFG_NAGENT_HPP_
#define LPGMFG_NAGENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpgmfg/ensemble.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/graphon.hpp"
#include "lpgmfg/mfg.hpp"

namespace lpgmfg {

// Per-agent policies: agent i follows class agent_class[i] of `policy`.
struct AgentPolicies {
  std::vector<std::size_t> agent_class;
  PolicyEnsemble policy;

  std::size_t size() const { return agent_class.size(); }
  std::span<const double> row(std::size_t agent, std::size_t t, std::size_t x) const {
    return policy.row(agent_class[agent], t, x);
  }
};

// Class whose interval [k/M, (k+1)/M) contains `position`; 1 maps to M - 1.
std::size_t class_of_position(double position, std::size_t classes);

// Assigns every agent the policy of the class containing its position.
AgentPolicies lift_policy(const PolicyEnsemble& pi, std::span<const double> positions);

struct SimulationRun {
  GraphSample graph;
  std::vector<std::size_t> agent_class;
  std::size_t states = 0;
  // counts[t * states + x] = number of agents in state x at time t, t = 0..T.
  std::vector<std::size_t> counts;
  std::optional<double> delta_mu;
  std::uint64_t seed = 0;

  std::size_t times() const { return states == 0 ? 0 : counts.size() / states; }
  double empirical(std::size_t t, std::size_t x) const {
    return static_cast<double>(counts[t * states + x]) / static_cast<double>(graph.n);
  }
  std::vector<double> empirical(std::size_t t) const;
};

// Samples one N-agent episode on `graph`. Agent i sees the neighborhood
// measure (1/(N rho)) sum_{j ~ i} delta_{X_j}, samples its action from its
// lifted policy and its next state from the environment kernel.
SimulationRun simulate_episode(const Environment& env, const GraphSample& graph,
                               const AgentPolicies& agents, std::uint64_t seed);

// sum over t = 0..T-1 and x of |empirical_t(x) - (1/M) sum_m mu[m][t](x)|.
double mu_error(const SimulationRun& run, const MeanFieldEnsemble& mf);

struct SweepOptions {
  std::vector<double> betas;
  std::vector<std::size_t> ns;
  std::size_t samples = 50;
  std::uint64_t base_seed = 0;
  Placement placement = Placement::kEquispaced;
  unsigned threads = 1;
};

struct SweepRow {
  double beta = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
  double mean_dmu = 0.0;
  double stderr_dmu = 0.0;
};

// For every (beta, N) cell: K graphs G(N, W, N^-beta) with per-sample seeds
// derived from (base_seed, beta index, N index, sample index), one episode
// each under the lifted `pi`, and the mean and standard error of Delta mu
// against the mean field of `pi` on the M-class discretization of `w`.
std::vector<SweepRow> sweep_convergence(const Environment& env, const Graphon& w,
                                        const PolicyEnsemble& pi, const SweepOptions& options);

}  // namespace lpgmfg

#endif  // LPGMFG_NAGENT_HPP_
