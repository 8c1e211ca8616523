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

#include "lpgmfg/csv.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>

#include "lpgmfg/error.hpp"

namespace lpgmfg {

namespace {

// Restores the stream precision on scope exit.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& os) : os_(os), old_(os.precision(17)) {}
  ~PrecisionGuard() { os_.precision(old_); }

 private:
  std::ostream& os_;
  std::streamsize old_;
};

void begin(std::ostream& os, const CsvProvenance* provenance, const char* columns) {
  if (provenance) write_provenance(os, *provenance);
  os << columns << '\n';
}

// Rows of numeric fields, skipping comments and the column header.
template <std::size_t N>
std::vector<std::array<double, N>> read_rows(std::istream& is, const std::string& columns) {
  std::vector<std::array<double, N>> rows;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != columns)
        throw ShapeError("expected columns '" + columns + "' but found '" + line + "'");
      header_seen = true;
      continue;
    }
    std::array<double, N> row{};
    std::istringstream ls(line);
    std::string cell;
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::getline(ls, cell, ',')) throw ShapeError("line " + std::to_string(line_no) + ": too few fields");
      row[i] = std::stod(cell);
    }
    rows.push_back(row);
  }
  if (!header_seen) throw ShapeError("missing column header '" + columns + "'");
  return rows;
}

}  // namespace

void write_provenance(std::ostream& os, const CsvProvenance& provenance) {
  os << "# config_hash=" << provenance.config_hash << " seed=" << provenance.seed << '\n';
}

void write_trace_csv(std::ostream& os, const OmdTrace& trace, const CsvProvenance* provenance) {
  PrecisionGuard guard(os);
  begin(os, provenance, "iteration,exploitability,seconds");
  for (const auto& e : trace.entries)
    os << e.iteration << ',' << e.exploitability << ',' << e.seconds << '\n';
}

void write_policy_csv(std::ostream& os, const PolicyEnsemble& pi, const CsvProvenance* provenance) {
  PrecisionGuard guard(os);
  begin(os, provenance, "class,t,state,action,prob");
  for (std::size_t m = 0; m < pi.classes(); ++m)
    for (std::size_t t = 0; t < pi.horizon(); ++t)
      for (std::size_t x = 0; x < pi.states(); ++x)
        for (std::size_t u = 0; u < pi.actions(); ++u)
          os << m << ',' << t << ',' << x << ',' << u << ',' << pi(m, t, x, u) << '\n';
}

void write_meanfield_csv(std::ostream& os, const MeanFieldEnsemble& mf,
                         const CsvProvenance* provenance) {
  PrecisionGuard guard(os);
  begin(os, provenance, "class,t,state,mass");
  for (std::size_t m = 0; m < mf.classes(); ++m)
    for (std::size_t t = 0; t < mf.times(); ++t)
      for (std::size_t x = 0; x < mf.states(); ++x)
        os << m << ',' << t << ',' << x << ',' << mf(m, t, x) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     const CsvProvenance* provenance) {
  PrecisionGuard guard(os);
  begin(os, provenance, "beta,n,k,mean_dmu,stderr_dmu");
  for (const auto& r : rows)
    os << r.beta << ',' << r.n << ',' << r.k << ',' << r.mean_dmu << ',' << r.stderr_dmu << '\n';
}

void write_degrees_csv(std::ostream& os, const std::map<std::size_t, std::size_t>& histogram,
                       const CsvProvenance* provenance) {
  begin(os, provenance, "degree,count");
  for (const auto& [degree, count] : histogram) os << degree << ',' << count << '\n';
}

void write_trajectory_csv(std::ostream& os, const SimulationRun& run,
                          const CsvProvenance* provenance) {
  PrecisionGuard guard(os);
  begin(os, provenance, "t,state,mass");
  for (std::size_t t = 0; t < run.times(); ++t)
    for (std::size_t x = 0; x < run.states; ++x)
      os << t << ',' << x << ',' << run.empirical(t, x) << '\n';
}

PolicyEnsemble read_policy_csv(std::istream& is) {
  const auto rows = read_rows<5>(is, "class,t,state,action,prob");
  std::array<std::size_t, 4> dims{0, 0, 0, 0};
  for (const auto& r : rows)
    for (std::size_t i = 0; i < 4; ++i) dims[i] = std::max(dims[i], static_cast<std::size_t>(r[i]) + 1);
  PolicyEnsemble pi(dims[0], dims[1], dims[2], dims[3]);
  if (rows.size() != pi.data().size()) throw ShapeError("policy CSV is not a dense table");
  for (const auto& r : rows)
    pi(static_cast<std::size_t>(r[0]), static_cast<std::size_t>(r[1]),
       static_cast<std::size_t>(r[2]), static_cast<std::size_t>(r[3])) = r[4];
  return pi;
}

MeanFieldEnsemble read_meanfield_csv(std::istream& is) {
  const auto rows = read_rows<4>(is, "class,t,state,mass");
  std::array<std::size_t, 3> dims{0, 0, 0};
  for (const auto& r : rows)
    for (std::size_t i = 0; i < 3; ++i) dims[i] = std::max(dims[i], static_cast<std::size_t>(r[i]) + 1);
  MeanFieldEnsemble mf(dims[0], dims[1], dims[2]);
  if (rows.size() != mf.data().size()) throw ShapeError("mean-field CSV is not a dense table");
  for (const auto& r : rows)
    mf(static_cast<std::size_t>(r[0]), static_cast<std::size_t>(r[1]),
       static_cast<std::size_t>(r[2])) = r[3];
  return mf;
}

}  // namespace lpgmfg
