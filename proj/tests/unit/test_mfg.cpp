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

#include "doctest.h"
#include "lpgmfg/envs.hpp"
#include "lpgmfg/error.hpp"
#include "lpgmfg/mfg.hpp"
#include "lpgmfg/random.hpp"
#include "support/oracles.hpp"

using namespace lpgmfg;

namespace {

DiscretizedGraphon weights_of(std::vector<double> w) {
  DiscretizedGraphon d;
  d.m = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(w.size()))));
  for (std::size_t i = 0; i < d.m; ++i) d.representatives.push_back((i + 0.5) / d.m);
  d.weights = std::move(w);
  return d;
}

PolicyEnsemble random_policy(std::size_t classes, std::size_t horizon, std::size_t states,
                             std::size_t actions, Rng& rng) {
  PolicyEnsemble pi(classes, horizon, states, actions);
  for (std::size_t m = 0; m < classes; ++m)
    for (std::size_t t = 0; t < horizon; ++t)
      for (std::size_t x = 0; x < states; ++x) {
        double total = 0.0;
        for (std::size_t u = 0; u < actions; ++u) total += pi(m, t, x, u) = rng.uniform() + 1e-3;
        for (std::size_t u = 0; u < actions; ++u) pi(m, t, x, u) /= total;
      }
  return pi;
}

// Two states, one action; P(1 | 0) = 0.5 and state 1 is absorbing.
FunctionEnvironment chain_env(std::size_t horizon) {
  return FunctionEnvironment(
      2, 1, horizon, {1.0, 0.0},
      [](std::size_t x, std::size_t, std::span<const double>) {
        return x == 0 ? std::vector<double>{0.5, 0.5} : std::vector<double>{0.0, 1.0};
      },
      [](std::size_t, std::size_t, std::span<const double>) { return 1.0; });
}

// Rewards and kernel depend on neither action nor neighborhood.
FunctionEnvironment passive_env() {
  return FunctionEnvironment(
      3, 2, 4, {0.2, 0.3, 0.5},
      [](std::size_t x, std::size_t, std::span<const double>) {
        std::vector<double> p(3, 0.25);
        p[x] = 0.5;
        return p;
      },
      [](std::size_t x, std::size_t, std::span<const double>) { return 0.1 * x; });
}

NeighborhoodEnsemble frozen_g(const Environment& env, std::size_t classes, double mass) {
  NeighborhoodEnsemble g(classes, env.horizon() + 1, env.num_states());
  for (std::size_t m = 0; m < classes; ++m)
    for (std::size_t t = 0; t <= env.horizon(); ++t)
      for (std::size_t x = 0; x < env.num_states(); ++x)
        g(m, t, x) = mass * (1.0 + 0.1 * t + 0.2 * x + 0.05 * m);
  return g;
}

}  // namespace

TEST_SUITE("mfg") {

TEST_CASE("neighborhood measure") {
  MeanFieldEnsemble mf(1, 1, 2);
  mf(0, 0, 0) = mf(0, 0, 1) = 0.5;
  auto g = neighborhood_mf(weights_of({2.0}), mf);
  CHECK(g(0, 0, 0) == 1.0);
  CHECK(g(0, 0, 1) == 1.0);

  g = neighborhood_mf(weights_of({0.0}), mf);
  CHECK(g(0, 0, 0) == 0.0);

  MeanFieldEnsemble two(2, 1, 2);
  two(0, 0, 0) = 1.0;
  two(1, 0, 1) = 1.0;
  g = neighborhood_mf(weights_of({1.0, 1.0, 1.0, 1.0}), two);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(g(i, 0, 0) == 0.5);
    CHECK(g(i, 0, 1) == 0.5);
  }
  CHECK_THROWS_AS(neighborhood_mf(weights_of({1.0}), two), ShapeError);
}

TEST_CASE("forward propagation examples") {
  FunctionEnvironment identity(
      3, 2, 5, {0.1, 0.6, 0.3},
      [](std::size_t x, std::size_t, std::span<const double>) {
        std::vector<double> p(3, 0.0);
        p[x] = 1.0;
        return p;
      },
      [](std::size_t, std::size_t, std::span<const double>) { return 0.0; });
  auto mf = forward(identity, uniform_policy(2, 5, 3, 2), weights_of({1, 1, 1, 1}));
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t t = 0; t <= 5; ++t) {
      CHECK(mf(m, t, 0) == 0.1);
      CHECK(mf(m, t, 1) == 0.6);
    }

  FunctionEnvironment mixing(
      4, 2, 3, {1.0, 0.0, 0.0, 0.0},
      [](std::size_t, std::size_t, std::span<const double>) { return std::vector<double>(4, 0.25); },
      [](std::size_t, std::size_t, std::span<const double>) { return 0.0; });
  mf = forward(mixing, uniform_policy(1, 3, 4, 2), weights_of({1}));
  for (std::size_t t = 1; t <= 3; ++t)
    for (std::size_t x = 0; x < 4; ++x) CHECK(mf(0, t, x) == 0.25);

  mf = forward(chain_env(2), uniform_policy(1, 2, 2, 1), weights_of({1}));
  CHECK(mf(0, 2, 0) == 0.25);
  CHECK(mf(0, 2, 1) == 0.75);
}

TEST_CASE("invalid kernels are rejected") {
  FunctionEnvironment leaky(
      2, 1, 2, {1.0, 0.0},
      [](std::size_t, std::size_t, std::span<const double>) { return std::vector<double>{0.5, 0.4}; },
      [](std::size_t, std::size_t, std::span<const double>) { return 0.0; });
  CHECK_THROWS_AS(forward(leaky, uniform_policy(1, 2, 2, 1), weights_of({1})), TransitionError);

  FunctionEnvironment negative(
      2, 1, 2, {1.0, 0.0},
      [](std::size_t, std::size_t, std::span<const double>) { return std::vector<double>{1.1, -0.1}; },
      [](std::size_t, std::size_t, std::span<const double>) { return 0.0; });
  CHECK_THROWS_AS(forward(negative, uniform_policy(1, 2, 2, 1), weights_of({1})), TransitionError);

  CHECK_THROWS_AS(FunctionEnvironment(
                      2, 1, 2, {0.7, 0.7},
                      [](std::size_t, std::size_t, std::span<const double>) {
                        return std::vector<double>{1.0, 0.0};
                      },
                      [](std::size_t, std::size_t, std::span<const double>) { return 0.0; }),
                  ParameterError);
}

TEST_CASE("policy value examples") {
  FunctionEnvironment zero(
      2, 2, 3, {0.5, 0.5},
      [](std::size_t, std::size_t u, std::span<const double>) {
        return u == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.3, 0.7};
      },
      [](std::size_t, std::size_t, std::span<const double>) { return 0.0; });
  const auto g0 = frozen_g(zero, 1, 1.0);
  CHECK(policy_value(zero, g0, uniform_policy(1, 3, 2, 2), 0) == 0.0);
  const QTable q0 = q_evaluate(zero, g0, uniform_policy(1, 3, 2, 2), 0);
  for (double v : q0.data()) CHECK(v == 0.0);

  const FunctionEnvironment ones = chain_env(50);
  CHECK(policy_value(ones, frozen_g(ones, 1, 1.0), uniform_policy(1, 50, 2, 1), 0) == 50.0);
}

TEST_CASE("terminal Q row is the reward") {
  const auto env = make_cyber_env(CyberParams{});
  const auto g = frozen_g(*env, 2, 0.3);
  Rng rng(4);
  const auto pi = random_policy(2, env->horizon(), 4, 2, rng);
  const QTable q = q_evaluate(*env, g, pi, 1);
  const std::size_t last = env->horizon() - 1;
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t u = 0; u < 2; ++u) CHECK(q(last, x, u) == env->reward(x, u, g.at(1, last)));
}

TEST_CASE("property: toy game agrees with exhaustive enumeration") {
  const auto env = oracle::toy_env();
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    NeighborhoodEnsemble g(1, 3, 2);
    for (double& v : g.data()) v = 2.0 * rng.uniform();
    const auto frozen = oracle::frozen_of(g, 0);
    const auto pi = random_policy(1, 2, 2, 2, rng);

    CHECK(std::abs(policy_value(*env, g, pi, 0) - oracle::path_value(*env, frozen, pi, 0)) <= 1e-12);
    const QTable q = q_evaluate(*env, g, pi, 0);
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t u = 0; u < 2; ++u)
          CHECK(std::abs(q(t, x, u) - oracle::path_q(*env, frozen, pi, 0, t, x, u)) <= 1e-12);

    const BestResponse br = best_response(*env, g, 0);
    const auto best = oracle::best_deterministic(*env, frozen);
    CHECK(std::abs(br.value - best.value) <= 1e-12);
    CHECK(std::abs(policy_value(*env, g, br.policy, 0) - best.value) <= 1e-12);
  }
}

TEST_CASE("property: best response dominates random policies") {
  const auto env = oracle::toy_env();
  Rng rng(7);
  NeighborhoodEnsemble g(1, 3, 2);
  for (double& v : g.data()) v = rng.uniform();
  const double best = best_response(*env, g, 0).value;
  for (int k = 0; k < 100; ++k) {
    const auto pi = random_policy(1, 2, 2, 2, rng);
    CHECK(best >= policy_value(*env, g, pi, 0) - 1e-12);
  }
}

TEST_CASE("best response structure") {
  const auto passive = passive_env();
  const auto g = frozen_g(passive, 1, 1.0);
  CHECK(best_response(passive, g, 0).value ==
        doctest::Approx(policy_value(passive, g, uniform_policy(1, 4, 3, 2), 0)).epsilon(1e-14));
  // All actions tie, so the lowest index is chosen.
  const auto br = best_response(passive, g, 0);
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t x = 0; x < 3; ++x) {
      CHECK(br.policy(0, t, x, 0) == 1.0);
      CHECK(br.policy(0, t, x, 1) == 0.0);
    }

  const auto chain = chain_env(3);
  const auto one = best_response(chain, frozen_g(chain, 1, 1.0), 0);
  for (double p : one.policy.data()) CHECK(p == 1.0);
}

TEST_CASE("exploitability vanishes without a choice") {
  const auto chain = chain_env(4);
  CHECK(exploitability(chain, uniform_policy(3, 4, 2, 1), weights_of(std::vector<double>(9, 1.0))) ==
        0.0);
  const auto passive = passive_env();
  Rng rng(9);
  CHECK(exploitability(passive, random_policy(2, 4, 3, 2, rng), weights_of({1, 2, 2, 1})) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cyber exploitability matches brute force on a short horizon") {
  CyberParams p;
  p.horizon = 3;
  const auto env = make_cyber_env(p);
  const auto wd = discretize(Graphon::power_law(0.5), 3);
  const auto pi = uniform_policy(3, 3, 4, 2);
  const double e = exploitability(*env, pi, wd);
  CHECK(e > 0.0);
  CHECK(std::abs(e - oracle::brute_exploitability(*env, pi, wd.weights, 3)) <= 1e-12);

  Rng rng(12);
  const auto other = random_policy(3, 3, 4, 2, rng);
  CHECK(std::abs(exploitability(*env, other, wd) -
                 oracle::brute_exploitability(*env, other, wd.weights, 3)) <= 1e-12);
}

TEST_CASE("property: forward marginals conserve mass") {
  const auto wd = discretize(Graphon::power_law(0.5), 6);
  Rng rng(21);
  std::vector<std::unique_ptr<Environment>> envs;
  envs.push_back(make_cyber_env(CyberParams{}));
  envs.push_back(make_hetero_cyber_env(HeteroCyberParams{}));
  envs.push_back(make_beach_env(BeachParams{}));
  for (const auto& env : envs) {
    const auto pi = random_policy(6, env->horizon(), env->num_states(), env->num_actions(), rng);
    const auto mf = forward(*env, pi, wd);
    for (std::size_t m = 0; m < 6; ++m)
      for (std::size_t t = 0; t <= env->horizon(); ++t) {
        double total = 0.0;
        for (double v : mf.at(m, t)) {
          CHECK(v >= 0.0);
          total += v;
        }
        CHECK(std::abs(total - 1.0) <= 1e-9);
      }
    // The unrenormalized oracle drifts no further than the tolerance.
    const auto naive = oracle::naive_forward(*env, pi, wd.weights, 6);
    for (std::size_t i = 0; i < mf.data().size(); ++i)
      CHECK(std::abs(naive.data()[i] - mf.data()[i]) <= 1e-9);
  }
}

TEST_CASE("property: neighborhood mass is bounded by the largest weight") {
  const auto wd = discretize(Graphon::cutoff_power_law(0.5, 0.04), 8);
  const auto env = make_cyber_env(CyberParams{});
  Rng rng(2);
  const auto mf = forward(*env, random_policy(8, 50, 4, 2, rng), wd);
  const auto g = neighborhood_mf(wd, mf);
  for (std::size_t m = 0; m < 8; ++m)
    for (std::size_t t = 0; t <= 50; ++t) {
      double total = 0.0;
      for (double v : g.at(m, t)) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        total += v;
      }
      CHECK(total <= wd.max_weight() + 1e-12);
    }
}

TEST_CASE("property: exploitability is nonnegative") {
  Rng rng(31);
  const auto wd = discretize(Graphon::power_law(0.5), 5);
  std::vector<std::unique_ptr<Environment>> envs;
  envs.push_back(make_cyber_env(CyberParams{}));
  envs.push_back(make_hetero_cyber_env(HeteroCyberParams{}));
  envs.push_back(make_beach_env(BeachParams{}));
  envs.push_back(oracle::toy_env());
  for (const auto& env : envs)
    for (int k = 0; k < 5; ++k) {
      const auto pi = random_policy(5, env->horizon(), env->num_states(), env->num_actions(), rng);
      CHECK(exploitability(*env, pi, wd) >= 0.0);
      for (double e : exploitability_by_class(*env, pi, neighborhood_mf(wd, forward(*env, pi, wd))))
        CHECK(e >= -1e-9);
    }
}

TEST_CASE("property: a dense graphon reduces to a classical mean field game") {
  const auto wd = discretize(Graphon::constant(1.0), 4);
  Rng rng(5);
  const auto one = random_policy(1, 50, 4, 2, rng);
  PolicyEnsemble pi(4, 50, 4, 2);
  for (std::size_t m = 0; m < 4; ++m)
    std::copy(one.data().begin(), one.data().end(),
              pi.data().begin() + static_cast<std::ptrdiff_t>(m * one.data().size()));
  const auto env = make_cyber_env(CyberParams{});
  const auto mf = forward(*env, pi, wd);
  const auto g = neighborhood_mf(wd, mf);
  const auto single = forward(*env, one, discretize(Graphon::constant(1.0), 1));
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t t = 0; t <= 50; ++t)
      for (std::size_t x = 0; x < 4; ++x) {
        CHECK(std::abs(mf(m, t, x) - mf(0, t, x)) <= 1e-12);
        CHECK(std::abs(g(m, t, x) - single(0, t, x)) <= 1e-12);
      }
}

TEST_CASE("monotonicity gap") {
  const auto env = make_cyber_env(CyberParams{});
  const auto wd = discretize(Graphon::power_law(0.5), 4);
  Rng rng(8);
  const auto a = random_policy(4, 50, 4, 2, rng);
  const auto b = random_policy(4, 50, 4, 2, rng);
  CHECK(monotonicity_gap(*env, a, a, wd) == 0.0);
  const double gap = monotonicity_gap(*env, a, b, wd);
  CHECK(std::isfinite(gap));
  CHECK(gap == monotonicity_gap(*env, b, a, wd));

  const auto passive = passive_env();
  const auto pa = random_policy(4, 4, 3, 2, rng), pb = random_policy(4, 4, 3, 2, rng);
  CHECK(monotonicity_gap(passive, pa, pb, wd) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("shape mismatches are rejected") {
  const auto env = make_cyber_env(CyberParams{});
  const auto wd = discretize(Graphon::power_law(0.5), 3);
  CHECK_THROWS_AS(forward(*env, uniform_policy(2, 50, 4, 2), wd), ShapeError);
  CHECK_THROWS_AS(forward(*env, uniform_policy(3, 49, 4, 2), wd), ShapeError);
  CHECK_THROWS_AS(forward(*env, uniform_policy(3, 50, 4, 3), wd), ShapeError);
  const auto g = frozen_g(*env, 3, 0.2);
  CHECK_THROWS(policy_value(*env, g, uniform_policy(3, 50, 4, 2), 3));
}

}  // TEST_SUITE
