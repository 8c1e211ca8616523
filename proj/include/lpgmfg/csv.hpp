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

#ifndef LPGMFG_CSV_HPP_
#define LPGMFG_CSV_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lpgmfg/ensemble.hpp"
#include "lpgmfg/nagent.hpp"
#include "lpgmfg/omd.hpp"

namespace lpgmfg {

// Comment line written above the column header of every CSV artifact.
struct CsvProvenance {
  std::string config_hash;
  std::uint64_t seed = 0;
};

void write_provenance(std::ostream& os, const CsvProvenance& provenance);

// iteration,exploitability,seconds
void write_trace_csv(std::ostream& os, const OmdTrace& trace, const CsvProvenance* provenance = nullptr);
// class,t,state,action,prob
void write_policy_csv(std::ostream& os, const PolicyEnsemble& pi,
                      const CsvProvenance* provenance = nullptr);
// class,t,state,mass
void write_meanfield_csv(std::ostream& os, const MeanFieldEnsemble& mf,
                         const CsvProvenance* provenance = nullptr);
// beta,n,k,mean_dmu,stderr_dmu
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     const CsvProvenance* provenance = nullptr);
// degree,count
void write_degrees_csv(std::ostream& os, const std::map<std::size_t, std::size_t>& histogram,
                       const CsvProvenance* provenance = nullptr);
// t,state,mass
void write_trajectory_csv(std::ostream& os, const SimulationRun& run,
                          const CsvProvenance* provenance = nullptr);

// Parses the policy / mean-field CSVs written above (comment lines skipped).
PolicyEnsemble read_policy_csv(std::istream& is);
MeanFieldEnsemble read_meanfield_csv(std::istream& is);

}  // namespace lpgmfg

#endif  // LPGMFG_CSV_HPP_
