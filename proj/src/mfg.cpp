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

#include "lpgmfg/mfg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lpgmfg/error.hpp"

namespace lpgmfg {

std::vector<std::string> Environment::state_names() const {
  std::vector<std::string> names(num_states());
  for (std::size_t x = 0; x < names.size(); ++x) names[x] = std::to_string(x);
  return names;
}

std::vector<double> Environment::transition(std::size_t x, std::size_t u,
                                            std::span<const double> g) const {
  std::vector<double> out(num_states(), 0.0);
  transition(x, u, g, out);
  return out;
}

FunctionEnvironment::FunctionEnvironment(std::size_t states, std::size_t actions,
                                         std::size_t horizon, std::vector<double> initial,
                                         TransitionFn transition, RewardFn reward, std::string name)
    : states_(states),
      actions_(actions),
      horizon_(horizon),
      initial_(std::move(initial)),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      name_(std::move(name)) {
  if (states_ == 0 || actions_ == 0) throw ParameterError("state and action counts must be >= 1");
  if (initial_.size() != states_) throw ShapeError("initial distribution length != state count");
  const double mass = std::accumulate(initial_.begin(), initial_.end(), 0.0);
  if (std::abs(mass - 1.0) > kTransitionTolerance ||
      std::any_of(initial_.begin(), initial_.end(), [](double p) { return p < 0.0; }))
    throw ParameterError("initial distribution must be a probability vector");
}

void FunctionEnvironment::transition(std::size_t x, std::size_t u, std::span<const double> g,
                                     std::span<double> out) const {
  const auto row = transition_(x, u, g);
  if (row.size() != out.size()) throw ShapeError("transition returned a row of the wrong length");
  std::copy(row.begin(), row.end(), out.begin());
}

double FunctionEnvironment::reward(std::size_t x, std::size_t u, std::span<const double> g) const {
  return reward_(x, u, g);
}

namespace {

void checked_transition(const Environment& env, std::size_t x, std::size_t u,
                        std::span<const double> g, std::span<double> out) {
  env.transition(x, u, g, out);
  double sum = 0.0;
  for (double p : out) {
    if (!(p >= -kTransitionTolerance)) {
      std::ostringstream os;
      os << env.name() << ": transition row (x=" << x << ", u=" << u << ") has entry " << p;
      throw TransitionError(os.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTransitionTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << env.name() << ": transition row (x=" << x << ", u=" << u << ") sums to " << sum;
    throw TransitionError(os.str());
  }
}

// Policy class used for neighborhood class m; single-class policies broadcast.
std::size_t policy_class(const PolicyEnsemble& pi, std::size_t classes, std::size_t m) {
  if (pi.classes() == 1) return 0;
  if (pi.classes() != classes) throw ShapeError("policy class count does not match");
  return m;
}

void check_policy(const Environment& env, const PolicyEnsemble& pi) {
  if (pi.horizon() != env.horizon() || pi.states() != env.num_states() ||
      pi.actions() != env.num_actions())
    throw ShapeError("policy shape does not match the environment");
}

void check_neighborhood(const Environment& env, const NeighborhoodEnsemble& g, std::size_t m) {
  if (g.times() != env.horizon() + 1 || g.states() != env.num_states())
    throw ShapeError("neighborhood ensemble shape does not match the environment");
  if (m >= g.classes()) throw ShapeError("class index out of range");
}

// Q and V of class m under a generic action chooser. `choose` receives the Q
// row and returns V(t, x) and optionally records the action distribution.
template <class Choose>
double backward(const Environment& env, const NeighborhoodEnsemble& g, std::size_t m,
                Choose&& choose, QTable* q_out) {
  const std::size_t nx = env.num_states(), nu = env.num_actions(), horizon = env.horizon();
  std::vector<double> next(nx, 0.0), current(nx, 0.0), q_row(nu), p(nx);
  for (std::size_t t = horizon; t-- > 0;) {
    const auto gt = g.at(m, t);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t u = 0; u < nu; ++u) {
        checked_transition(env, x, u, gt, p);
        double cont = 0.0;
        for (std::size_t y = 0; y < nx; ++y) cont += p[y] * next[y];
        q_row[u] = env.reward(x, u, gt) + cont;
        if (q_out) (*q_out)(t, x, u) = q_row[u];
      }
      current[x] = choose(t, x, std::span<const double>(q_row));
    }
    std::swap(next, current);
  }
  const auto mu0 = env.initial_distribution();
  double value = 0.0;
  for (std::size_t x = 0; x < nx; ++x) value += mu0[x] * next[x];
  return value;
}

}  // namespace

NeighborhoodEnsemble neighborhood_mf(const DiscretizedGraphon& wd, const MeanFieldEnsemble& mf) {
  if (wd.m != mf.classes()) throw ShapeError("graphon class count does not match mean field");
  NeighborhoodEnsemble g(mf.classes(), mf.times(), mf.states());
  const double inv_m = 1.0 / static_cast<double>(wd.m);
  for (std::size_t i = 0; i < wd.m; ++i)
    for (std::size_t t = 0; t < mf.times(); ++t) {
      auto out = g.at(i, t);
      for (std::size_t j = 0; j < wd.m; ++j) {
        const double w = wd.weight(i, j) * inv_m;
        const auto mu = mf.at(j, t);
        for (std::size_t x = 0; x < mf.states(); ++x) out[x] += w * mu[x];
      }
    }
  return g;
}

MeanFieldEnsemble forward(const Environment& env, const PolicyEnsemble& pi,
                          const DiscretizedGraphon& wd) {
  check_policy(env, pi);
  const std::size_t classes = wd.m, nx = env.num_states(), nu = env.num_actions();
  const std::size_t horizon = env.horizon();
  MeanFieldEnsemble mf(classes, horizon + 1, nx);
  const auto mu0 = env.initial_distribution();
  if (mu0.size() != nx) throw ShapeError("initial distribution length != state count");
  for (std::size_t m = 0; m < classes; ++m) std::copy(mu0.begin(), mu0.end(), mf.at(m, 0).begin());

  const double inv_m = 1.0 / static_cast<double>(classes);
  std::vector<double> g(nx), p(nx);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t m = 0; m < classes; ++m) {
      std::fill(g.begin(), g.end(), 0.0);
      for (std::size_t j = 0; j < classes; ++j) {
        const double w = wd.weight(m, j) * inv_m;
        const auto mu = mf.at(j, t);
        for (std::size_t x = 0; x < nx; ++x) g[x] += w * mu[x];
      }
      const std::size_t pc = policy_class(pi, classes, m);
      const auto mu = mf.at(m, t);
      auto out = mf.at(m, t + 1);
      for (std::size_t x = 0; x < nx; ++x) {
        if (mu[x] == 0.0) continue;
        const auto act = pi.row(pc, t, x);
        for (std::size_t u = 0; u < nu; ++u) {
          if (act[u] == 0.0) continue;
          checked_transition(env, x, u, g, p);
          const double w = mu[x] * act[u];
          for (std::size_t y = 0; y < nx; ++y) out[y] += w * p[y];
        }
      }
      const double mass = std::accumulate(out.begin(), out.end(), 0.0);
      const double drift = std::abs(mass - 1.0);
      if (drift > kDriftLimit) {
        std::ostringstream os;
        os << env.name() << ": marginal of class " << m << " at t=" << t + 1 << " has mass "
           << mass;
        throw TransitionError(os.str());
      }
      if (drift > kRenormalizeThreshold)
        for (double& v : out) v /= mass;
    }
  }
  return mf;
}

double policy_value(const Environment& env, const NeighborhoodEnsemble& g, const PolicyEnsemble& pi,
                    std::size_t m) {
  check_policy(env, pi);
  check_neighborhood(env, g, m);
  const std::size_t pc = policy_class(pi, g.classes(), m);
  return backward(
      env, g, m,
      [&](std::size_t t, std::size_t x, std::span<const double> q) {
        const auto act = pi.row(pc, t, x);
        double v = 0.0;
        for (std::size_t u = 0; u < q.size(); ++u) v += act[u] * q[u];
        return v;
      },
      nullptr);
}

QTable q_evaluate(const Environment& env, const NeighborhoodEnsemble& g, const PolicyEnsemble& pi,
                  std::size_t m) {
  check_policy(env, pi);
  check_neighborhood(env, g, m);
  const std::size_t pc = policy_class(pi, g.classes(), m);
  QTable q(env.horizon(), env.num_states(), env.num_actions());
  backward(
      env, g, m,
      [&](std::size_t t, std::size_t x, std::span<const double> row) {
        const auto act = pi.row(pc, t, x);
        double v = 0.0;
        for (std::size_t u = 0; u < row.size(); ++u) v += act[u] * row[u];
        return v;
      },
      &q);
  return q;
}

BestResponse best_response(const Environment& env, const NeighborhoodEnsemble& g, std::size_t m) {
  check_neighborhood(env, g, m);
  BestResponse br{PolicyEnsemble(1, env.horizon(), env.num_states(), env.num_actions()), 0.0};
  br.value = backward(
      env, g, m,
      [&](std::size_t t, std::size_t x, std::span<const double> q) {
        const auto best = static_cast<std::size_t>(
            std::distance(q.begin(), std::max_element(q.begin(), q.end())));
        br.policy(0, t, x, best) = 1.0;
        return q[best];
      },
      nullptr);
  return br;
}

std::vector<double> exploitability_by_class(const Environment& env, const PolicyEnsemble& pi,
                                            const NeighborhoodEnsemble& g) {
  std::vector<double> gaps(g.classes());
  for (std::size_t m = 0; m < g.classes(); ++m)
    gaps[m] = best_response(env, g, m).value - policy_value(env, g, pi, m);
  return gaps;
}

double exploitability(const Environment& env, const PolicyEnsemble& pi,
                      const NeighborhoodEnsemble& g) {
  const auto gaps = exploitability_by_class(env, pi, g);
  double total = 0.0;
  for (double v : gaps) total += v;
  const double value = total / static_cast<double>(gaps.size());
  if (value < -1e-9) {
    std::ostringstream os;
    os << "exploitability " << value << " is negative beyond tolerance";
    throw Error(os.str());
  }
  return std::max(value, 0.0);
}

double exploitability(const Environment& env, const PolicyEnsemble& pi,
                      const DiscretizedGraphon& wd) {
  return exploitability(env, pi, neighborhood_mf(wd, forward(env, pi, wd)));
}

double monotonicity_gap(const Environment& env, const PolicyEnsemble& pi,
                        const PolicyEnsemble& pi2, const DiscretizedGraphon& wd) {
  const auto g1 = neighborhood_mf(wd, forward(env, pi, wd));
  const auto g2 = neighborhood_mf(wd, forward(env, pi2, wd));
  double total = 0.0;
  for (std::size_t m = 0; m < wd.m; ++m) {
    total += (policy_value(env, g1, pi, m) + policy_value(env, g2, pi2, m)) -
             (policy_value(env, g1, pi2, m) + policy_value(env, g2, pi, m));
  }
  return total / static_cast<double>(wd.m);
}

}  // namespace lpgmfg
