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

#ifndef LPGMFG_GRAPHON_HPP_
#define LPGMFG_GRAPHON_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace lpgmfg {

struct GraphSample;

inline constexpr double kDefaultClampMax = 1e6;

// W(x, y) = c.
struct ConstantKernel {
  double value = 1.0;
};

// W(x, y) = (1 - a)^2 (x y)^(-a), a in (0, 1). Unbounded at the axes.
struct PowerLawKernel {
  double exponent = 0.5;
};

// W(x, y) = ((1 - a) / (1 - a c^(1-a)))^2 (max{x, c} max{y, c})^(-a).
struct CutoffPowerLawKernel {
  double exponent = 0.5;
  double cutoff = 0.04;
};

// Piecewise constant on the rectangles of a partition of [0,1].
// `breakpoints` has Q + 1 strictly increasing entries from 0 to 1 and
// `values` holds the symmetric Q x Q block values in row-major order.
struct StepKernel {
  std::vector<double> breakpoints;
  std::vector<double> values;

  std::size_t parts() const { return breakpoints.size() - 1; }
  double value(std::size_t i, std::size_t j) const { return values[i * parts() + j]; }
  // Index of the part containing x; the last part is closed at 1.
  std::size_t part_of(double x) const;
  double max_value() const;
};

// Lipschitz version of a step kernel: each coordinate is blended linearly
// across a strip of half-width `border_width` around every interior
// breakpoint, and the two coordinate blends combine bilinearly.
struct SmoothedStepKernel {
  StepKernel base;
  double border_width = 0.0;
};

using GraphonKind = std::variant<ConstantKernel, PowerLawKernel, CutoffPowerLawKernel,
                                 StepKernel, SmoothedStepKernel>;

// Symmetric nonnegative kernel on [0,1]^2. Evaluation is capped at
// `clamp_max`, which also stands in for the value at a singularity.
class Graphon {
 public:
  // Validates the parameters; throws ParameterError naming the bound.
  explicit Graphon(GraphonKind kind, double clamp_max = kDefaultClampMax);

  static Graphon constant(double value, double clamp_max = kDefaultClampMax);
  static Graphon power_law(double exponent, double clamp_max = kDefaultClampMax);
  static Graphon cutoff_power_law(double exponent, double cutoff,
                                  double clamp_max = kDefaultClampMax);
  // Q x Q values on equal parts when `breakpoints` is empty.
  static Graphon step(std::vector<double> values, std::vector<double> breakpoints = {},
                      double clamp_max = kDefaultClampMax);

  // Throws DomainError unless x, y in [0,1].
  double eval(double x, double y) const;
  double operator()(double x, double y) const { return eval(x, y); }

  const GraphonKind& kind() const { return kind_; }
  double clamp_max() const { return clamp_max_; }
  bool is_step() const { return std::holds_alternative<StepKernel>(kind_); }
  std::string describe() const;

 private:
  double raw(double x, double y) const;

  GraphonKind kind_;
  double clamp_max_;
};

// Named description of a graphon as read from an experiment config.
// `values` carries the block matrix for step kinds.
struct GraphonDescriptor {
  std::string kind = "power_law";
  std::map<std::string, double> params;
  std::vector<double> values;
};

Graphon make_graphon(const GraphonDescriptor& descriptor);

// M x M graphon values at the class representatives (i + 1/2) / M.
struct DiscretizedGraphon {
  std::size_t m = 0;
  std::vector<double> representatives;
  std::vector<double> weights;

  double weight(std::size_t i, std::size_t j) const { return weights[i * m + j]; }
  double max_weight() const;
};

DiscretizedGraphon discretize(const Graphon& w, std::size_t m);

// Step graphon of a finite graph on N equal parts: 1 on I_i x I_j when
// {i, j} is an edge. With `normalize`, divided by the edge density 2|E|/N^2.
Graphon step_from_graph(const GraphSample& g, bool normalize);

// Throws ParameterError unless `base` is a step graphon with Q parts and
// 0 < xi < min(1/(2Q), half of the narrowest part).
Graphon smooth_step(const Graphon& base, double xi);

struct CutNormOptions {
  std::size_t grid = 32;
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  // Midpoint quadrature points per grid cell and axis.
  std::size_t quadrature = 4;
  unsigned threads = 1;
};

// Lower bound on the cut norm of `kernel` (any real kernel on [0,1]^2).
// S and T are restricted to unions of grid cells; each restart runs an
// alternating maximization from a seeded random start (restart 0 starts from
// the full set), and the best value over restarts and both signs is returned.
// The all-cells candidate |integral of W| is always evaluated.
double cut_norm_estimate(const std::function<double(double, double)>& kernel,
                         const CutNormOptions& options);
double cut_norm_estimate(const Graphon& w, const CutNormOptions& options);
// Cut norm of a - b (no measure-preserving relabeling).
double cut_norm_estimate(const Graphon& a, const Graphon& b, const CutNormOptions& options);

}  // namespace lpgmfg

#endif  // LPGMFG_GRAPHON_HPP_
