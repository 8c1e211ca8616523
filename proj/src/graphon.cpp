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

#include "lpgmfg/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpgmfg/error.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/parallel.hpp"
#include "lpgmfg/random.hpp"

namespace lpgmfg {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

std::vector<double> equal_breakpoints(std::size_t q) {
  std::vector<double> b(q + 1);
  for (std::size_t i = 0; i <= q; ++i) b[i] = static_cast<double>(i) / static_cast<double>(q);
  b[q] = 1.0;
  return b;
}

void validate(const StepKernel& k) {
  require(k.breakpoints.size() >= 2, "step graphon needs at least one part");
  const std::size_t q = k.parts();
  require(k.values.size() == q * q, "step graphon values must form a Q x Q matrix");
  require(k.breakpoints.front() == 0.0 && k.breakpoints.back() == 1.0,
          "step graphon breakpoints must start at 0 and end at 1");
  for (std::size_t i = 0; i < q; ++i) {
    require(k.breakpoints[i] < k.breakpoints[i + 1],
            "step graphon breakpoints must be strictly increasing");
    for (std::size_t j = 0; j < q; ++j) {
      const double v = k.value(i, j);
      require(std::isfinite(v) && v >= 0.0, "step graphon values must be finite and >= 0");
      require(v == k.value(j, i), "step graphon values must be symmetric");
    }
  }
}

struct Validator {
  void operator()(const ConstantKernel& k) const {
    require(std::isfinite(k.value) && k.value >= 0.0, "constant value must be finite and >= 0");
  }
  void operator()(const PowerLawKernel& k) const {
    require(k.exponent > 0.0 && k.exponent < 1.0, "exponent must lie in (0,1)");
  }
  void operator()(const CutoffPowerLawKernel& k) const {
    require(k.exponent > 0.0 && k.exponent < 1.0, "exponent must lie in (0,1)");
    require(k.cutoff > 0.0 && k.cutoff < 1.0, "cutoff must lie in (0,1)");
  }
  void operator()(const StepKernel& k) const { validate(k); }
  void operator()(const SmoothedStepKernel& k) const {
    validate(k.base);
    const std::size_t q = k.base.parts();
    double narrowest = 1.0;
    for (std::size_t i = 0; i < q; ++i)
      narrowest = std::min(narrowest, k.base.breakpoints[i + 1] - k.base.breakpoints[i]);
    require(k.border_width > 0.0 && k.border_width < 1.0 / (2.0 * static_cast<double>(q)) &&
                k.border_width < narrowest / 2.0,
            "border width must lie in (0, 1/(2Q))");
  }
};

// Linear blend of a coordinate across the strip around the nearest interior
// breakpoint: weight w_lo on part lo and w_hi on part hi.
struct Blend {
  std::size_t lo, hi;
  double w_lo, w_hi;
};

Blend blend(const StepKernel& k, double xi, double x) {
  const std::size_t q = k.parts();
  for (std::size_t b = 1; b < q; ++b) {
    const double edge = k.breakpoints[b];
    if (x >= edge - xi && x < edge + xi) {
      return {b - 1, b, 0.5 - (x - edge) / (2.0 * xi), (x - edge + xi) / (2.0 * xi)};
    }
  }
  const std::size_t p = k.part_of(x);
  return {p, p, 1.0, 0.0};
}

struct RawEval {
  double x, y, clamp_max;

  double operator()(const ConstantKernel& k) const { return k.value; }
  double operator()(const PowerLawKernel& k) const {
    if (x == 0.0 || y == 0.0) return clamp_max;
    const double a = k.exponent;
    return (1.0 - a) * (1.0 - a) * std::pow(x * y, -a);
  }
  double operator()(const CutoffPowerLawKernel& k) const {
    const double a = k.exponent;
    const double pref = (1.0 - a) / (1.0 - a * std::pow(k.cutoff, 1.0 - a));
    return pref * pref * std::pow(std::max(x, k.cutoff) * std::max(y, k.cutoff), -a);
  }
  double operator()(const StepKernel& k) const { return k.value(k.part_of(x), k.part_of(y)); }
  double operator()(const SmoothedStepKernel& k) const {
    const Blend bx = blend(k.base, k.border_width, x);
    const Blend by = blend(k.base, k.border_width, y);
    const auto& w = k.base;
    // The mixed terms are summed first so that swapping x and y only swaps
    // the operands of a commutative addition (exact symmetry).
    const double mixed = (bx.w_lo * by.w_hi) * w.value(bx.lo, by.hi) +
                         (bx.w_hi * by.w_lo) * w.value(bx.hi, by.lo);
    return (bx.w_lo * by.w_lo) * w.value(bx.lo, by.lo) + mixed +
           (bx.w_hi * by.w_hi) * w.value(bx.hi, by.hi);
  }
};

}  // namespace

std::size_t StepKernel::part_of(double x) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(breakpoints.begin(), it));
  return std::clamp<std::size_t>(idx, 1, parts()) - 1;
}

double StepKernel::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

Graphon::Graphon(GraphonKind kind, double clamp_max) : kind_(std::move(kind)), clamp_max_(clamp_max) {
  require(clamp_max > 0.0 && !std::isnan(clamp_max), "clamp_max must be > 0");
  std::visit(Validator{}, kind_);
}

Graphon Graphon::constant(double value, double clamp_max) {
  return Graphon(ConstantKernel{value}, clamp_max);
}

Graphon Graphon::power_law(double exponent, double clamp_max) {
  return Graphon(PowerLawKernel{exponent}, clamp_max);
}

Graphon Graphon::cutoff_power_law(double exponent, double cutoff, double clamp_max) {
  return Graphon(CutoffPowerLawKernel{exponent, cutoff}, clamp_max);
}

Graphon Graphon::step(std::vector<double> values, std::vector<double> breakpoints,
                      double clamp_max) {
  if (breakpoints.empty()) {
    const auto q = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    require(q >= 1 && q * q == values.size(), "step graphon values must form a Q x Q matrix");
    breakpoints = equal_breakpoints(q);
  }
  return Graphon(StepKernel{std::move(breakpoints), std::move(values)}, clamp_max);
}

double Graphon::eval(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    std::ostringstream os;
    os << "graphon evaluated outside [0,1]^2 at (" << x << ", " << y << ")";
    throw DomainError(os.str());
  }
  return std::min(raw(x, y), clamp_max_);
}

double Graphon::raw(double x, double y) const {
  return std::visit(RawEval{x, y, clamp_max_}, kind_);
}

std::string Graphon::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantKernel>) {
          os << "constant(value=" << k.value << ")";
        } else if constexpr (std::is_same_v<K, PowerLawKernel>) {
          os << "power_law(exponent=" << k.exponent << ")";
        } else if constexpr (std::is_same_v<K, CutoffPowerLawKernel>) {
          os << "cutoff_power_law(exponent=" << k.exponent << ", cutoff=" << k.cutoff << ")";
        } else if constexpr (std::is_same_v<K, StepKernel>) {
          os << "step(parts=" << k.parts() << ")";
        } else {
          os << "smoothed_step(parts=" << k.base.parts() << ", border_width=" << k.border_width
             << ")";
        }
      },
      kind_);
  return os.str();
}

Graphon make_graphon(const GraphonDescriptor& d) {
  auto param = [&d](const std::string& name, double fallback) {
    const auto it = d.params.find(name);
    return it == d.params.end() ? fallback : it->second;
  };
  const double clamp_max = param("clamp_max", kDefaultClampMax);
  if (d.kind == "constant") return Graphon::constant(param("value", 1.0), clamp_max);
  if (d.kind == "power_law") return Graphon::power_law(param("exponent", 0.5), clamp_max);
  if (d.kind == "cutoff_power_law")
    return Graphon::cutoff_power_law(param("exponent", 0.5), param("cutoff", 0.04), clamp_max);
  if (d.kind == "step" || d.kind == "smoothed_step") {
    Graphon base = Graphon::step(d.values, {}, clamp_max);
    if (d.kind == "step") return base;
    const auto it = d.params.find("border_width");
    require(it != d.params.end(), "smoothed_step requires border_width");
    return smooth_step(base, it->second);
  }
  throw ParameterError("unknown graphon kind '" + d.kind +
                       "' (valid: constant, power_law, cutoff_power_law, step, smoothed_step)");
}

double DiscretizedGraphon::max_weight() const {
  return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

DiscretizedGraphon discretize(const Graphon& w, std::size_t m) {
  require(m >= 1, "class count must be >= 1");
  DiscretizedGraphon d;
  d.m = m;
  d.representatives.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    d.representatives[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
  d.weights.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      d.weights[i * m + j] = w.eval(d.representatives[i], d.representatives[j]);
  return d;
}

Graphon step_from_graph(const GraphSample& g, bool normalize) {
  require(g.n >= 1, "graph must have at least one vertex");
  const std::size_t n = g.n;
  double value = 1.0;
  if (normalize) {
    const double density = edge_density(g);
    if (density <= 0.0) throw ParameterError("cannot normalize a graph with zero edges");
    value = 1.0 / density;
  }
  std::vector<double> values(n * n, 0.0);
  for (const auto& [u, v] : g.edges) {
    values[static_cast<std::size_t>(u) * n + v] = value;
    values[static_cast<std::size_t>(v) * n + u] = value;
  }
  return Graphon::step(std::move(values), {}, std::max(kDefaultClampMax, value));
}

Graphon smooth_step(const Graphon& base, double xi) {
  const auto* step = std::get_if<StepKernel>(&base.kind());
  require(step != nullptr, "smoothing requires a step graphon");
  return Graphon(SmoothedStepKernel{*step, xi}, base.clamp_max());
}

namespace {

// Best value of sum_{i in S, j in T} sign * a_ij from one starting column set.
double alternating_search(const std::vector<double>& a, std::size_t g, double sign,
                          std::vector<char> cols) {
  std::vector<double> row_sums(g), col_sums(g);
  std::vector<char> rows(g);
  double best = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    for (std::size_t i = 0; i < g; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < g; ++j)
        if (cols[j]) s += a[i * g + j];
      rows[i] = sign * s > 0.0;
    }
    std::fill(col_sums.begin(), col_sums.end(), 0.0);
    for (std::size_t i = 0; i < g; ++i)
      if (rows[i])
        for (std::size_t j = 0; j < g; ++j) col_sums[j] += sign * a[i * g + j];
    double value = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
      cols[j] = col_sums[j] > 0.0;
      if (cols[j]) value += col_sums[j];
    }
    if (value <= best) break;
    best = value;
  }
  return best;
}

}  // namespace

double cut_norm_estimate(const std::function<double(double, double)>& kernel,
                         const CutNormOptions& options) {
  require(options.grid >= 1, "cut norm grid must be >= 1");
  require(options.quadrature >= 1, "cut norm quadrature must be >= 1");
  const std::size_t g = options.grid;
  const std::size_t q = options.quadrature;
  const double sub = static_cast<double>(g * q);
  // Cell integrals by the midpoint rule on a q x q sub-grid.
  std::vector<double> cells(g * g, 0.0);
  const double point_weight = 1.0 / (sub * sub);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < q; ++a) {
        const double x = (static_cast<double>(i * q + a) + 0.5) / sub;
        for (std::size_t b = 0; b < q; ++b) {
          const double y = (static_cast<double>(j * q + b) + 0.5) / sub;
          s += kernel(x, y);
        }
      }
      cells[i * g + j] = s * point_weight;
    }

  double total = 0.0;
  for (double c : cells) total += c;
  double best = std::abs(total);

  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  std::vector<double> results(restarts, 0.0);
  parallel_for(restarts, options.threads, [&](std::size_t r) {
    std::vector<char> start(g, 1);
    if (r > 0) {
      Rng rng(derive_seed(options.seed, {r}));
      for (auto& c : start) c = rng.uniform() < 0.5;
    }
    results[r] = std::max(alternating_search(cells, g, 1.0, start),
                          alternating_search(cells, g, -1.0, start));
  });
  for (double v : results) best = std::max(best, v);
  return best;
}

double cut_norm_estimate(const Graphon& w, const CutNormOptions& options) {
  return cut_norm_estimate([&w](double x, double y) { return w.eval(x, y); }, options);
}

double cut_norm_estimate(const Graphon& a, const Graphon& b, const CutNormOptions& options) {
  return cut_norm_estimate([&](double x, double y) { return a.eval(x, y) - b.eval(x, y); },
                           options);
}

}  // namespace lpgmfg
