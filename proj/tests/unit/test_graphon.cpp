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
#include <string>

#include "doctest.h"
#include "lpgmfg/error.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/graphon.hpp"
#include "lpgmfg/random.hpp"

using namespace lpgmfg;

namespace {

GraphSample complete_pair() {
  GraphSample g;
  g.n = 2;
  g.positions = {0.5, 1.0};
  g.edges = {{0, 1}};
  return g;
}

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<Graphon> every_kind() {
  const Graphon step = Graphon::step({0.0, 2.0, 1.0, 2.0, 0.5, 3.0, 1.0, 3.0, 4.0});
  return {Graphon::constant(1.5),
          Graphon::power_law(0.5),
          Graphon::cutoff_power_law(0.3, 0.1),
          step,
          smooth_step(step, 0.1),
          Graphon::step({1.0, 0.0, 0.0, 1.0}, {0.0, 0.3, 1.0})};
}

}  // namespace

TEST_SUITE("graphon") {

TEST_CASE("power law closed form") {
  const Graphon w = Graphon::power_law(0.5);
  CHECK(w.eval(1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w.eval(0.25, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.eval(0.0, 0.5) == kDefaultClampMax);
  CHECK(w.eval(0.5, 0.0) == kDefaultClampMax);
  CHECK(Graphon::power_law(0.5, 10.0).eval(0.0, 0.0) == 10.0);
}

TEST_CASE("power law exponent must lie in the open unit interval") {
  CHECK(error_of([] { Graphon::power_law(1.5); }).find("exponent must lie in (0,1)") !=
        std::string::npos);
  CHECK_THROWS_AS(Graphon::power_law(0.0), ParameterError);
  CHECK_THROWS_AS(Graphon::power_law(1.0), ParameterError);
  CHECK_THROWS_AS(Graphon::cutoff_power_law(0.5, 0.0), ParameterError);
  CHECK_THROWS_AS(Graphon::cutoff_power_law(0.5, 1.0), ParameterError);
  CHECK_THROWS_AS(Graphon::constant(-1.0), ParameterError);
}

TEST_CASE("cutoff power law closed form") {
  const Graphon w = Graphon::cutoff_power_law(0.5, 0.04);
  CHECK(w.eval(1.0, 1.0) == doctest::Approx(0.308641975308642).epsilon(1e-14));
  // Below the cutoff the kernel is flat.
  CHECK(w.eval(0.0, 0.5) == w.eval(0.04, 0.5));
  CHECK(w.eval(0.01, 0.02) == w.eval(0.04, 0.04));
  // Normalized to unit mass: midpoint rule on a fine grid.
  double mass = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mass += w.eval((i + 0.5) / n, (j + 0.5) / n);
  CHECK(mass / (n * n) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("evaluation outside the unit square is a domain error") {
  const Graphon w = Graphon::constant(1.0);
  CHECK(w.eval(0.3, 0.9) == 1.0);
  CHECK_THROWS_AS(w.eval(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(w.eval(0.5, 1.0 + 1e-12), DomainError);
  CHECK_THROWS_AS(w.eval(std::nan(""), 0.5), DomainError);
}

TEST_CASE("property: every kind is exactly symmetric and nonnegative") {
  Rng rng(17);
  for (const auto& w : every_kind()) {
    for (int k = 0; k < 1000; ++k) {
      const double x = rng.uniform(), y = rng.uniform();
      CHECK(w.eval(x, y) == w.eval(y, x));
      CHECK(w.eval(x, y) >= 0.0);
    }
  }
}

TEST_CASE("asymmetric step values are rejected") {
  CHECK_THROWS_AS(Graphon::step({0.0, 1.0, 2.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(Graphon::step({1.0, 1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(Graphon::step({1.0, -1.0, -1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(Graphon::step({1.0, 0.0, 0.0, 1.0}, {0.0, 0.7, 0.5}), ParameterError);
}

TEST_CASE("discretize uses interval midpoints") {
  const auto d = discretize(Graphon::power_law(0.5), 2);
  REQUIRE(d.m == 2);
  CHECK(d.representatives[0] == 0.25);
  CHECK(d.representatives[1] == 0.75);
  CHECK(d.weight(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.weight(0, 1) == doctest::Approx(0.5773502691896257).epsilon(1e-14));
  CHECK(d.weight(1, 0) == d.weight(0, 1));

  const auto c = discretize(Graphon::constant(2.0), 3);
  for (double v : c.weights) CHECK(v == 2.0);

  const Graphon w = Graphon::cutoff_power_law(0.4, 0.2);
  const auto one = discretize(w, 1);
  REQUIRE(one.weights.size() == 1);
  CHECK(one.weights[0] == w.eval(0.5, 0.5));

  CHECK_THROWS_AS(discretize(w, 0), ParameterError);
}

TEST_CASE("property: discretized weights are symmetric, finite and increasing in representatives") {
  for (const auto& w : every_kind()) {
    const auto d = discretize(w, 7);
    for (std::size_t i = 0; i < d.m; ++i) {
      if (i > 0) CHECK(d.representatives[i] > d.representatives[i - 1]);
      for (std::size_t j = 0; j < d.m; ++j) {
        CHECK(std::isfinite(d.weight(i, j)));
        CHECK(d.weight(i, j) >= 0.0);
        CHECK(d.weight(i, j) == d.weight(j, i));
      }
    }
  }
}

TEST_CASE("property: constant graphon discretizes to exactly its value") {
  for (double c : {0.1, 1.0 / 3.0, 7.25})
    for (std::size_t m : {1u, 5u, 25u})
      for (double v : discretize(Graphon::constant(c), m).weights) CHECK(v == c);
}

TEST_CASE("step graphon of a graph") {
  const Graphon raw = step_from_graph(complete_pair(), false);
  CHECK(raw.eval(0.25, 0.25) == 0.0);
  CHECK(raw.eval(0.25, 0.75) == 1.0);
  CHECK(raw.eval(0.75, 0.25) == 1.0);
  CHECK(raw.eval(0.75, 0.75) == 0.0);

  const Graphon norm = step_from_graph(complete_pair(), true);
  CHECK(norm.eval(0.25, 0.75) == 2.0);
  CHECK(norm.eval(0.75, 0.75) == 0.0);

  GraphSample empty;
  empty.n = 3;
  empty.positions = {1.0 / 3, 2.0 / 3, 1.0};
  CHECK_THROWS_AS(step_from_graph(empty, true), ParameterError);
  CHECK(step_from_graph(empty, false).eval(0.5, 0.5) == 0.0);
}

TEST_CASE("smoothed step graphon") {
  const Graphon flat = Graphon::step({0.7, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7});
  const Graphon flat_s = smooth_step(flat, 0.1);
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const double v = flat_s.eval(rng.uniform(), rng.uniform());
    CHECK(v == doctest::Approx(0.7).epsilon(1e-15));
  }

  const Graphon corner = Graphon::step({0.0, 0.0, 0.0, 1.0});
  const Graphon s = smooth_step(corner, 0.1);
  CHECK(s.eval(0.75, 0.75) == 1.0);
  CHECK(s.eval(0.5, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.eval(0.75, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.eval(0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.eval(0.1, 0.1) == 0.0);
  // Continuous across the strip edges.
  CHECK(s.eval(0.4 + 1e-12, 0.75) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(s.eval(0.6 - 1e-12, 0.75) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(smooth_step(corner, 0.25), ParameterError);
  CHECK_THROWS_AS(smooth_step(corner, 0.0), ParameterError);
  CHECK_THROWS_AS(smooth_step(Graphon::constant(1.0), 0.1), ParameterError);
}

TEST_CASE("property: smoothed step graphon is Lipschitz") {
  const Graphon step = Graphon::step({0.0, 2.0, 1.0, 2.0, 0.5, 3.0, 1.0, 3.0, 4.0});
  const double xi = 0.05;
  const Graphon s = smooth_step(step, xi);
  // Jumps are at most 4, spread over a strip of width 2 xi.
  const double bound = 4.0 / (2.0 * xi) + 1e-9;
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const double x = rng.uniform() * 0.999, y = rng.uniform();
    const double h = 1e-3 * rng.uniform() + 1e-6;
    CHECK(std::abs(s.eval(x + h, y) - s.eval(x, y)) <= bound * h);
  }
}

TEST_CASE("cut norm of a constant is the constant") {
  CutNormOptions o;
  o.grid = 8;
  o.restarts = 2;
  CHECK(cut_norm_estimate(Graphon::constant(0.8), o) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("cut norm is at least the absolute full integral") {
  CutNormOptions o;
  o.grid = 16;
  o.restarts = 3;
  o.quadrature = 2;
  auto kernel = [](double x, double y) { return std::sin(6 * x) * std::sin(6 * y) + 0.05; };
  double total = 0.0;
  const std::size_t n = o.grid * o.quadrature;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += kernel((i + 0.5) / n, (j + 0.5) / n);
  total /= static_cast<double>(n * n);
  CHECK(total > 0.0);
  CHECK(cut_norm_estimate(kernel, o) >= total - 1e-12);
}

TEST_CASE("cut norm of a graphon minus itself is zero") {
  const Graphon w = Graphon::cutoff_power_law(0.5, 0.05);
  CutNormOptions o;
  o.grid = 8;
  CHECK(cut_norm_estimate(w, w, o) == 0.0);
}

TEST_CASE("property: cut norm is deterministic and monotone in restarts") {
  const Graphon a = Graphon::step({0.0, 2.0, 1.0, 2.0, 0.5, 3.0, 1.0, 3.0, 4.0});
  const Graphon b = Graphon::constant(1.5);
  CutNormOptions o;
  o.grid = 12;
  o.seed = 99;
  double previous = 0.0;
  for (std::size_t r = 1; r <= 6; ++r) {
    o.restarts = r;
    const double v = cut_norm_estimate(a, b, o);
    CHECK(v >= previous);
    CHECK(v == cut_norm_estimate(a, b, o));
    previous = v;
  }
  o.threads = 3;
  CHECK(cut_norm_estimate(a, b, o) == previous);
}

TEST_CASE("property: smoothing moves the step graphon little in cut norm") {
  const std::vector<double> values{0.0, 2.0, 1.0, 2.0, 0.5, 3.0, 1.0, 3.0, 4.0};
  const Graphon step = Graphon::step(values);
  for (double xi : {0.02, 0.05, 0.1}) {
    CutNormOptions o;
    o.grid = 30;
    o.restarts = 4;
    const double est = cut_norm_estimate(smooth_step(step, xi), step, o);
    CHECK(est > 0.0);
    CHECK(est <= 4.0 * 3.0 * xi * 4.0);
  }
}

TEST_CASE("graphon descriptors") {
  GraphonDescriptor d;
  d.kind = "cutoff_power_law";
  d.params = {{"exponent", 0.5}, {"cutoff", 0.04}};
  CHECK(make_graphon(d).eval(1.0, 1.0) == doctest::Approx(0.308641975308642));

  d.kind = "smoothed_step";
  d.params = {{"border_width", 0.1}};
  d.values = {0.0, 0.0, 0.0, 1.0};
  CHECK(make_graphon(d).eval(0.5, 0.75) == doctest::Approx(0.5));
  d.params.clear();
  CHECK_THROWS_AS(make_graphon(d), ParameterError);

  d.kind = "lognormal";
  CHECK(error_of([&] { make_graphon(d); }).find("power_law") != std::string::npos);
}

}  // TEST_SUITE
