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

#ifndef LPGMFG_EXPERIMENT_HPP_
#define LPGMFG_EXPERIMENT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lpgmfg/config.hpp"
#include "lpgmfg/omd.hpp"

namespace lpgmfg {

enum class Command { kSolve, kSimulate, kSweep, kGraphStats, kCutNorm };

inline constexpr const char* kCommandNames[] = {"solve", "simulate", "sweep", "graph-stats",
                                                "cutnorm"};

// Throws ConfigError listing the valid names.
Command parse_command(const std::string& name);
std::string to_string(Command command);

struct RunOptions {
  // Overrides the config's output directory.
  std::optional<std::filesystem::path> out;
  unsigned threads = 1;
};

struct ManifestEntry {
  std::string file;
  std::string config_hash;
};

struct ExperimentResult {
  int status = 0;
  std::string message;
  std::vector<ManifestEntry> manifest;
};

// OMD equilibrium of the configured environment and graphon.
OmdResult solve_equilibrium(const ExperimentConfig& cfg);

// Runs one subcommand and writes its CSVs plus manifest.csv into the output
// directory. Engine and I/O failures give a nonzero status and a message.
ExperimentResult run_experiment(const ExperimentConfig& cfg, Command command,
                                const RunOptions& options = {});

}  // namespace lpgmfg

#endif  // LPGMFG_EXPERIMENT_HPP_
