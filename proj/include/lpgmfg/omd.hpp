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

#ifndef LPGMFG_OMD_HPP_
#define LPGMFG_OMD_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "lpgmfg/ensemble.hpp"
#include "lpgmfg/graphon.hpp"
#include "lpgmfg/mfg.hpp"

namespace lpgmfg {

// Entropic mirror map: softmax of a score row, computed after subtracting the
// row maximum. Throws ParameterError on non-finite input.
void mirror_map(std::span<const double> y, std::span<double> out);
std::vector<double> mirror_map(std::span<const double> y);

// Scores, current policy and iteration count of an OMD run. `policy` is the
// mirror map of `scores`, row by row.
struct OmdState {
  ScoreEnsemble scores;
  PolicyEnsemble policy;
  std::size_t iteration = 0;
  double gamma = 1.0;

  // Zero scores and the uniform policy.
  static OmdState initial(const Environment& env, std::size_t classes, double gamma);
};

// One iteration: forward pass of the current policy, on-policy Q for every
// class against the induced neighborhood measures, scores += gamma * Q, and
// the policy is recomputed by the mirror map.
OmdState omd_step(OmdState state, const Environment& env, const DiscretizedGraphon& wd);

struct OmdOptions {
  double gamma = 1.0;
  std::size_t iterations = 100;
  std::size_t eval_every = 1;
  bool keep_snapshots = false;
};

struct OmdTraceEntry {
  std::size_t iteration = 0;
  double exploitability = 0.0;
  double seconds = 0.0;  // wall clock since the previous entry
};

struct OmdTrace {
  std::vector<OmdTraceEntry> entries;
  std::vector<PolicyEnsemble> snapshots;  // aligned with entries when kept
};

struct OmdResult {
  PolicyEnsemble policy;
  MeanFieldEnsemble mean_field;
  OmdTrace trace;
};

// Runs OMD from zero scores. Exploitability is recorded for the policy after
// every `eval_every`-th update, starting with the initial uniform policy
// (iteration 0) and always including the final policy.
OmdResult run_omd(const Environment& env, const DiscretizedGraphon& wd, const OmdOptions& options);

}  // namespace lpgmfg

#endif  // LPGMFG_OMD_HPP_
