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

// Experiment driver: lpgmfg <subcommand> --config <path> [--out dir]
// [--seed n] [--threads n].

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lpgmfg/config.hpp"
#include "lpgmfg/error.hpp"
#include "lpgmfg/experiment.hpp"
#include "lpgmfg/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Graphon mean field game solver and N-agent experiments"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = lpgmfg::default_threads();
  bool print_config = false;

  app.add_option("subcommand", command, "solve, simulate, sweep, graph-stats or cutnorm")
      ->required()
      ->check(CLI::IsMember({"solve", "simulate", "sweep", "graph-stats", "cutnorm"}));
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--seed", seed, "base seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "print the resolved config and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    lpgmfg::ExperimentConfig cfg = lpgmfg::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (print_config) {
      std::cout << cfg.canonical();
      return 0;
    }
    lpgmfg::RunOptions options;
    if (!out_dir.empty()) options.out = out_dir;
    options.threads = threads;
    const auto result = lpgmfg::run_experiment(cfg, lpgmfg::parse_command(command), options);
    if (result.status != 0) {
      std::cerr << "lpgmfg: " << result.message << '\n';
      return result.status;
    }
    for (const auto& entry : result.manifest) std::cout << entry.file << '\n';
    return 0;
  } catch (const lpgmfg::Error& e) {
    std::cerr << "lpgmfg: " << e.what() << '\n';
    return 2;
  }
}
