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

#ifndef LPGMFG_CONFIG_HPP_
#define LPGMFG_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpgmfg/envs.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/graphon.hpp"

namespace lpgmfg {

inline constexpr const char* kEnvironmentNames[] = {"cyber", "hetero_cyber", "beach"};

struct OmdSettings {
  double gamma = 1.0;
  std::size_t iterations = 200;
  std::size_t eval_every = 1;
};

struct SweepSettings {
  std::vector<double> betas{0.51};
  std::vector<std::size_t> ns{8, 16, 32, 64, 128, 256};
  std::size_t samples = 50;
  Placement placement = Placement::kEquispaced;
  bool equilibrium_policy = true;
};

struct SimulateSettings {
  std::size_t n = 100;
  double beta = 0.51;
  Placement placement = Placement::kEquispaced;
  bool equilibrium_policy = true;
};

struct GraphSettings {
  std::size_t n = 1000;
  double beta = 0.5;
  Placement placement = Placement::kIidUniform;
  std::optional<double> rho;
  bool export_edges = false;
};

struct CutNormSettings {
  std::size_t grid = 32;
  std::size_t restarts = 8;
  std::size_t quadrature = 4;
  // Second graphon of the difference; without one the estimator runs on the
  // main graphon against its border smoothing when that is a step graphon,
  // and on the graphon alone otherwise.
  std::optional<GraphonDescriptor> against;
  double smoothing = 0.0;
};

struct ExperimentConfig {
  std::string environment = "cyber";
  std::uint64_t seed = 0;
  std::string output = "out";
  CyberParams cyber;
  HeteroCyberParams hetero_cyber;
  BeachParams beach;
  GraphonDescriptor graphon;
  // Unset means 10 for beach and 25 otherwise.
  std::optional<std::size_t> classes;
  OmdSettings omd;
  SweepSettings sweep;
  SimulateSettings simulate;
  GraphSettings graph;
  CutNormSettings cutnorm;

  std::size_t num_classes() const;
  std::unique_ptr<Environment> make_environment() const;
  // Every resolved field in config syntax, sections in a fixed order.
  std::string canonical() const;
  // 16 hex digits of FNV-1a over canonical().
  std::string hash() const;
};

// Throws ConfigError on malformed text, unknown sections or keys, values out
// of range and unknown names.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace lpgmfg

#endif  // LPGMFG_CONFIG_HPP_
