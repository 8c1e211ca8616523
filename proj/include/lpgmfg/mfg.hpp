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

#ifndef LPGMFG_MFG_HPP_
#define LPGMFG_MFG_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lpgmfg/ensemble.hpp"
#include "lpgmfg/graphon.hpp"

namespace lpgmfg {

// Finite-horizon game interface. `g` is the neighborhood measure seen by the
// agent: nonnegative, bounded, not necessarily normalized.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t num_states() const = 0;
  virtual std::size_t num_actions() const = 0;
  virtual std::size_t horizon() const = 0;
  virtual std::span<const double> initial_distribution() const = 0;
  // Writes P(. | x, u, g) into `out` (length num_states()).
  virtual void transition(std::size_t x, std::size_t u, std::span<const double> g,
                          std::span<double> out) const = 0;
  virtual double reward(std::size_t x, std::size_t u, std::span<const double> g) const = 0;
  virtual std::string name() const = 0;
  virtual std::vector<std::string> state_names() const;

  std::vector<double> transition(std::size_t x, std::size_t u, std::span<const double> g) const;
};

// Environment assembled from callables; used for toy games and bindings.
class FunctionEnvironment final : public Environment {
 public:
  using TransitionFn = std::function<std::vector<double>(std::size_t, std::size_t,
                                                         std::span<const double>)>;
  using RewardFn = std::function<double(std::size_t, std::size_t, std::span<const double>)>;

  FunctionEnvironment(std::size_t states, std::size_t actions, std::size_t horizon,
                      std::vector<double> initial, TransitionFn transition, RewardFn reward,
                      std::string name = "function");

  std::size_t num_states() const override { return states_; }
  std::size_t num_actions() const override { return actions_; }
  std::size_t horizon() const override { return horizon_; }
  std::span<const double> initial_distribution() const override { return initial_; }
  void transition(std::size_t x, std::size_t u, std::span<const double> g,
                  std::span<double> out) const override;
  double reward(std::size_t x, std::size_t u, std::span<const double> g) const override;
  std::string name() const override { return name_; }

 private:
  std::size_t states_, actions_, horizon_;
  std::vector<double> initial_;
  TransitionFn transition_;
  RewardFn reward_;
  std::string name_;
};

// Kernel rows may deviate from the simplex by at most this much.
inline constexpr double kTransitionTolerance = 1e-9;
// Forward marginals drifting more than kRenormalizeThreshold off mass one are
// renormalized; more than kDriftLimit is an error.
inline constexpr double kRenormalizeThreshold = 1e-9;
inline constexpr double kDriftLimit = 1e-6;

// G[i][t] = (1/M) sum_j w_ij mu[j][t].
NeighborhoodEnsemble neighborhood_mf(const DiscretizedGraphon& wd, const MeanFieldEnsemble& mf);

// Propagates mu[m][0] = mu_0 forward under pi and the neighborhood measures
// induced by the marginals at each step. A policy with one class is applied
// to every class.
MeanFieldEnsemble forward(const Environment& env, const PolicyEnsemble& pi,
                          const DiscretizedGraphon& wd);

// J_m(pi) against the frozen neighborhood ensemble g: expected sum of
// rewards over t = 0..T-1 with V(T, .) = 0.
double policy_value(const Environment& env, const NeighborhoodEnsemble& g, const PolicyEnsemble& pi,
                    std::size_t m);

// On-policy Q of class m against the frozen g.
QTable q_evaluate(const Environment& env, const NeighborhoodEnsemble& g, const PolicyEnsemble& pi,
                  std::size_t m);

struct BestResponse {
  PolicyEnsemble policy;  // one class, deterministic
  double value = 0.0;
};

// Backward induction against the frozen g; ties go to the lowest action.
BestResponse best_response(const Environment& env, const NeighborhoodEnsemble& g, std::size_t m);

// Per-class best-response value minus policy value against g.
std::vector<double> exploitability_by_class(const Environment& env, const PolicyEnsemble& pi,
                                            const NeighborhoodEnsemble& g);

// (1/M) sum_m [sup J_m - J_m(pi)] against the mean field pi induces; clamped
// at zero after checking it is >= -1e-9.
double exploitability(const Environment& env, const PolicyEnsemble& pi,
                      const DiscretizedGraphon& wd);
double exploitability(const Environment& env, const PolicyEnsemble& pi,
                      const NeighborhoodEnsemble& g);

// (1/M) sum_m [J^mu_m(pi) + J^mu'_m(pi') - J^mu_m(pi') - J^mu'_m(pi)] with
// mu, mu' the mean fields of pi, pi'. Nonpositive for weakly monotone games.
double monotonicity_gap(const Environment& env, const PolicyEnsemble& pi,
                        const PolicyEnsemble& pi2, const DiscretizedGraphon& wd);

}  // namespace lpgmfg

#endif  // LPGMFG_MFG_HPP_
