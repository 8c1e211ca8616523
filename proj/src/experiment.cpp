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

#include "lpgmfg/experiment.hpp"

#include <fstream>
#include <functional>

#include "lpgmfg/csv.hpp"
#include "lpgmfg/error.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/nagent.hpp"
#include "lpgmfg/random.hpp"

namespace lpgmfg {

namespace fs = std::filesystem;

namespace {

// Stream indices under the base seed, one per subcommand.
enum SeedStream : std::uint64_t { kSimulateStream = 1, kSweepStream, kGraphStream, kCutStream };

class ArtifactWriter {
 public:
  ArtifactWriter(fs::path dir, const ExperimentConfig& cfg)
      : dir_(std::move(dir)), provenance_{cfg.hash(), cfg.seed} {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void write(const std::string& name, const std::function<void(std::ostream&, const CsvProvenance*)>& body) {
    const fs::path path = dir_ / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open '" + path.string() + "' for writing");
    body(os, &provenance_);
    os.flush();
    if (!os) throw Error("write to '" + path.string() + "' failed");
    manifest_.push_back({name, provenance_.config_hash});
  }

  std::vector<ManifestEntry> finish() {
    auto entries = manifest_;
    write("manifest.csv", [&entries](std::ostream& os, const CsvProvenance* p) {
      write_provenance(os, *p);
      os << "file,config_hash\n";
      for (const auto& e : entries) os << e.file << ',' << e.config_hash << '\n';
    });
    return manifest_;
  }

 private:
  fs::path dir_;
  CsvProvenance provenance_;
  std::vector<ManifestEntry> manifest_;
};

PolicyEnsemble configured_policy(const ExperimentConfig& cfg, const Environment& env,
                                 bool equilibrium) {
  if (equilibrium) return solve_equilibrium(cfg).policy;
  return uniform_policy(cfg.num_classes(), env.horizon(), env.num_states(), env.num_actions());
}

void run_solve(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const OmdResult r = solve_equilibrium(cfg);
  out.write("trace.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_trace_csv(os, r.trace, p);
  });
  out.write("policy.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_policy_csv(os, r.policy, p);
  });
  out.write("meanfield.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_meanfield_csv(os, r.mean_field, p);
  });
}

void run_simulate(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const auto env = cfg.make_environment();
  const Graphon w = make_graphon(cfg.graphon);
  const PolicyEnsemble pi = configured_policy(cfg, *env, cfg.simulate.equilibrium_policy);
  const GraphSample g = sample_graph(w, cfg.simulate.n, cfg.simulate.beta, cfg.simulate.placement,
                                     derive_seed(cfg.seed, {kSimulateStream, 0}));
  SimulationRun run = simulate_episode(*env, g, lift_policy(pi, g.positions),
                                       derive_seed(cfg.seed, {kSimulateStream, 1}));
  const MeanFieldEnsemble mf = forward(*env, pi, discretize(w, pi.classes()));
  run.delta_mu = mu_error(run, mf);
  out.write("trajectory.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_trajectory_csv(os, run, p);
  });
  out.write("simulation.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_provenance(os, *p);
    os.precision(17);
    os << "n,beta,rho,edges,delta_mu\n"
       << g.n << ',' << cfg.simulate.beta << ',' << g.rho << ',' << g.num_edges() << ','
       << *run.delta_mu << '\n';
  });
}

void run_sweep(const ExperimentConfig& cfg, const RunOptions& options, ArtifactWriter& out) {
  const auto env = cfg.make_environment();
  const Graphon w = make_graphon(cfg.graphon);
  const PolicyEnsemble pi = configured_policy(cfg, *env, cfg.sweep.equilibrium_policy);
  SweepOptions so;
  so.betas = cfg.sweep.betas;
  so.ns = cfg.sweep.ns;
  so.samples = cfg.sweep.samples;
  so.placement = cfg.sweep.placement;
  so.base_seed = derive_seed(cfg.seed, {kSweepStream});
  so.threads = options.threads;
  const auto rows = sweep_convergence(*env, w, pi, so);
  out.write("sweep.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_sweep_csv(os, rows, p);
  });
}

void run_graph_stats(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const Graphon w = make_graphon(cfg.graphon);
  const GraphSample g = sample_graph(w, cfg.graph.n, cfg.graph.beta, cfg.graph.placement,
                                     derive_seed(cfg.seed, {kGraphStream}), cfg.graph.rho);
  out.write("degrees.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_degrees_csv(os, degree_histogram(g), p);
  });
  out.write("graph_stats.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_provenance(os, *p);
    os.precision(17);
    os << "n,rho,edges,density,max_degree\n"
       << g.n << ',' << g.rho << ',' << g.num_edges() << ',' << edge_density(g) << ','
       << max_degree(g) << '\n';
  });
  if (cfg.graph.export_edges) {
    out.write("edges.txt", [&](std::ostream& os, const CsvProvenance*) { write_edge_list(os, g); });
  }
}

void run_cutnorm(const ExperimentConfig& cfg, const RunOptions& options, ArtifactWriter& out) {
  const Graphon w = make_graphon(cfg.graphon);
  CutNormOptions co;
  co.grid = cfg.cutnorm.grid;
  co.restarts = cfg.cutnorm.restarts;
  co.quadrature = cfg.cutnorm.quadrature;
  co.seed = derive_seed(cfg.seed, {kCutStream});
  co.threads = options.threads;
  double estimate = 0.0;
  std::string against = "none";
  if (cfg.cutnorm.against) {
    const Graphon other = make_graphon(*cfg.cutnorm.against);
    estimate = cut_norm_estimate(w, other, co);
    against = other.describe();
  } else if (w.is_step() && cfg.cutnorm.smoothing > 0.0) {
    const Graphon smooth = smooth_step(w, cfg.cutnorm.smoothing);
    estimate = cut_norm_estimate(w, smooth, co);
    against = smooth.describe();
  } else {
    estimate = cut_norm_estimate(w, co);
  }
  out.write("cutnorm.csv", [&](std::ostream& os, const CsvProvenance* p) {
    write_provenance(os, *p);
    os.precision(17);
    os << "graphon,against,grid,restarts,quadrature,lower_bound\n"
       << '"' << w.describe() << "\",\"" << against << "\"," << co.grid << ',' << co.restarts
       << ',' << co.quadrature << ',' << estimate << '\n';
  });
}

}  // namespace

Command parse_command(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kCommandNames); ++i)
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  throw ConfigError("unknown subcommand '" + name +
                    "' (valid: solve, simulate, sweep, graph-stats, cutnorm)");
}

std::string to_string(Command command) { return kCommandNames[static_cast<std::size_t>(command)]; }

OmdResult solve_equilibrium(const ExperimentConfig& cfg) {
  const auto env = cfg.make_environment();
  const DiscretizedGraphon wd = discretize(make_graphon(cfg.graphon), cfg.num_classes());
  OmdOptions o;
  o.gamma = cfg.omd.gamma;
  o.iterations = cfg.omd.iterations;
  o.eval_every = cfg.omd.eval_every;
  return run_omd(*env, wd, o);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, Command command,
                                const RunOptions& options) {
  ExperimentResult result;
  try {
    ArtifactWriter out(options.out ? *options.out : fs::path(cfg.output), cfg);
    switch (command) {
      case Command::kSolve: run_solve(cfg, out); break;
      case Command::kSimulate: run_simulate(cfg, out); break;
      case Command::kSweep: run_sweep(cfg, options, out); break;
      case Command::kGraphStats: run_graph_stats(cfg, out); break;
      case Command::kCutNorm: run_cutnorm(cfg, options, out); break;
    }
    result.manifest = out.finish();
  } catch (const std::exception& e) {
    result.status = 1;
    result.message = e.what();
  }
  return result;
}

}  // namespace lpgmfg
