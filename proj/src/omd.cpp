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

#include "lpgmfg/omd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "lpgmfg/error.hpp"

namespace lpgmfg {

void mirror_map(std::span<const double> y, std::span<double> out) {
  if (y.empty() || out.size() != y.size()) throw ShapeError("mirror map row size mismatch");
  double top = y[0];
  for (double v : y) {
    if (!std::isfinite(v)) throw ParameterError("mirror map input must be finite");
    top = std::max(top, v);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = std::exp(y[i] - top);
    total += out[i];
  }
  for (double& v : out) v /= total;
}

std::vector<double> mirror_map(std::span<const double> y) {
  std::vector<double> out(y.size());
  mirror_map(y, out);
  return out;
}

OmdState OmdState::initial(const Environment& env, std::size_t classes, double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be >= 0");
  OmdState s;
  s.scores = ScoreEnsemble(classes, env.horizon(), env.num_states(), env.num_actions());
  s.policy = uniform_policy(classes, env.horizon(), env.num_states(), env.num_actions());
  s.gamma = gamma;
  return s;
}

namespace {

// Score update and mirror map given the neighborhood measures of the current
// policy.
void apply_update(OmdState& s, const Environment& env, const NeighborhoodEnsemble& g) {
  for (std::size_t m = 0; m < s.scores.classes(); ++m) {
    const QTable q = q_evaluate(env, g, s.policy, m);
    for (std::size_t t = 0; t < s.scores.horizon(); ++t)
      for (std::size_t x = 0; x < s.scores.states(); ++x) {
        auto y = s.scores.row(m, t, x);
        const auto qr = q.row(t, x);
        for (std::size_t u = 0; u < y.size(); ++u) y[u] += s.gamma * qr[u];
      }
  }
  for (std::size_t m = 0; m < s.scores.classes(); ++m)
    for (std::size_t t = 0; t < s.scores.horizon(); ++t)
      for (std::size_t x = 0; x < s.scores.states(); ++x)
        mirror_map(s.scores.row(m, t, x), s.policy.row(m, t, x));
  ++s.iteration;
}

}  // namespace

OmdState omd_step(OmdState state, const Environment& env, const DiscretizedGraphon& wd) {
  if (state.scores.classes() != wd.m) throw ShapeError("OMD state class count != graphon classes");
  const auto g = neighborhood_mf(wd, forward(env, state.policy, wd));
  apply_update(state, env, g);
  return state;
}

OmdResult run_omd(const Environment& env, const DiscretizedGraphon& wd, const OmdOptions& options) {
  if (options.eval_every < 1) throw ParameterError("eval_every must be >= 1");
  OmdState state = OmdState::initial(env, wd.m, options.gamma);
  OmdTrace trace;
  using Clock = std::chrono::steady_clock;
  auto last = Clock::now();

  auto record = [&](const NeighborhoodEnsemble& g) {
    const double value = exploitability(env, state.policy, g);
    const auto now = Clock::now();
    trace.entries.push_back(
        {state.iteration, value, std::chrono::duration<double>(now - last).count()});
    last = now;
    if (options.keep_snapshots) trace.snapshots.push_back(state.policy);
  };

  MeanFieldEnsemble mf = forward(env, state.policy, wd);
  NeighborhoodEnsemble g = neighborhood_mf(wd, mf);
  for (std::size_t k = 0; k < options.iterations; ++k) {
    // The mean field of the current policy serves both its evaluation and
    // the next score update.
    if (state.iteration % options.eval_every == 0) record(g);
    apply_update(state, env, g);
    mf = forward(env, state.policy, wd);
    g = neighborhood_mf(wd, mf);
  }
  record(g);
  return {state.policy, std::move(mf), std::move(trace)};
}

}  // namespace lpgmfg
