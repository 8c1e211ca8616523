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

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "lpgmfg/config.hpp"
#include "lpgmfg/csv.hpp"
#include "lpgmfg/error.hpp"
#include "lpgmfg/experiment.hpp"
#include "lpgmfg/graph_sample.hpp"
#include "lpgmfg/graphon.hpp"
#include "lpgmfg/mfg.hpp"
#include "lpgmfg/nagent.hpp"
#include "lpgmfg/omd.hpp"

namespace py = pybind11;
using namespace lpgmfg;

namespace {

py::array_t<double> to_array(const std::vector<double>& data, std::vector<py::ssize_t> shape) {
  py::array_t<double> out(shape);
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

py::array_t<double> policy_array(const PolicyEnsemble& pi) {
  return to_array(pi.data(), {static_cast<py::ssize_t>(pi.classes()),
                              static_cast<py::ssize_t>(pi.horizon()),
                              static_cast<py::ssize_t>(pi.states()),
                              static_cast<py::ssize_t>(pi.actions())});
}

py::array_t<double> meanfield_array(const MeanFieldEnsemble& mf) {
  return to_array(mf.data(), {static_cast<py::ssize_t>(mf.classes()),
                              static_cast<py::ssize_t>(mf.times()),
                              static_cast<py::ssize_t>(mf.states())});
}

PolicyEnsemble policy_from(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 4) throw ShapeError("policy array must have shape (M, T, X, U)");
  PolicyEnsemble pi(a.shape(0), a.shape(1), a.shape(2), a.shape(3));
  std::copy(a.data(), a.data() + a.size(), pi.data().begin());
  return pi;
}

DiscretizedGraphon discretized(const Graphon& w, std::size_t m) { return discretize(w, m); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graphon mean field games on sparse networks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<TransitionError>(m, "TransitionError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Graphon>(m, "Graphon")
      .def_static("constant", &Graphon::constant, py::arg("value"),
                  py::arg("clamp_max") = kDefaultClampMax)
      .def_static("power_law", &Graphon::power_law, py::arg("exponent"),
                  py::arg("clamp_max") = kDefaultClampMax)
      .def_static("cutoff_power_law", &Graphon::cutoff_power_law, py::arg("exponent"),
                  py::arg("cutoff"), py::arg("clamp_max") = kDefaultClampMax)
      .def_static("step", &Graphon::step, py::arg("values"),
                  py::arg("breakpoints") = std::vector<double>{},
                  py::arg("clamp_max") = kDefaultClampMax)
      .def("eval", &Graphon::eval, py::arg("x"), py::arg("y"))
      .def("__call__", &Graphon::eval, py::arg("x"), py::arg("y"))
      .def("smooth", &smooth_step, py::arg("border_width"))
      .def("describe", &Graphon::describe)
      .def("__repr__", [](const Graphon& w) { return "Graphon(" + w.describe() + ")"; })
      .def_property_readonly("clamp_max", &Graphon::clamp_max);

  m.def(
      "discretize",
      [](const Graphon& w, std::size_t classes) {
        const auto d = discretized(w, classes);
        const auto n = static_cast<py::ssize_t>(d.m);
        return to_array(d.weights, {n, n});
      },
      py::arg("graphon"), py::arg("classes"),
      "M x M graphon values at the class midpoints.");

  m.def(
      "cut_norm_estimate",
      [](const Graphon& a, const Graphon* b, std::size_t grid, std::size_t restarts,
         std::size_t quadrature, std::uint64_t seed) {
        CutNormOptions o;
        o.grid = grid;
        o.restarts = restarts;
        o.quadrature = quadrature;
        o.seed = seed;
        return b ? cut_norm_estimate(a, *b, o) : cut_norm_estimate(a, o);
      },
      py::arg("a"), py::arg("b") = nullptr, py::arg("grid") = 32, py::arg("restarts") = 8,
      py::arg("quadrature") = 4, py::arg("seed") = 0,
      "Lower bound on the cut norm of a (or a - b) from grid-aligned sets.");

  py::class_<GraphSample>(m, "GraphSample")
      .def_readonly("n", &GraphSample::n)
      .def_readonly("rho", &GraphSample::rho)
      .def_readonly("positions", &GraphSample::positions)
      .def_property_readonly("edges",
                             [](const GraphSample& g) {
                               py::array_t<std::uint32_t> out(
                                   {static_cast<py::ssize_t>(g.edges.size()), py::ssize_t{2}});
                               auto r = out.mutable_unchecked<2>();
                               for (std::size_t i = 0; i < g.edges.size(); ++i) {
                                 r(i, 0) = g.edges[i].first;
                                 r(i, 1) = g.edges[i].second;
                               }
                               return out;
                             })
      .def_property_readonly("num_edges", &GraphSample::num_edges)
      .def("degree_histogram", &degree_histogram)
      .def("density", &edge_density)
      .def("max_degree", &max_degree)
      .def("edge_list", [](const GraphSample& g) {
        std::ostringstream os;
        write_edge_list(os, g);
        return os.str();
      });

  m.def(
      "sample_graph",
      [](const Graphon& w, std::size_t n, double beta, const std::string& placement,
         std::uint64_t seed, std::optional<double> rho) {
        return sample_graph(w, n, beta, parse_placement(placement), seed, rho);
      },
      py::arg("graphon"), py::arg("n"), py::arg("beta"), py::arg("placement") = "iid_uniform",
      py::arg("seed") = 0, py::arg("rho") = std::nullopt);
  m.def("read_edge_list", [](const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
  });

  py::class_<Environment>(m, "Environment")
      .def_property_readonly("num_states", &Environment::num_states)
      .def_property_readonly("num_actions", &Environment::num_actions)
      .def_property_readonly("horizon", &Environment::horizon)
      .def_property_readonly("name", &Environment::name)
      .def_property_readonly("state_names", &Environment::state_names)
      .def_property_readonly("initial_distribution",
                             [](const Environment& e) {
                               const auto s = e.initial_distribution();
                               return std::vector<double>(s.begin(), s.end());
                             })
      .def(
          "transition",
          [](const Environment& e, std::size_t x, std::size_t u, const std::vector<double>& g) {
            return e.transition(x, u, g);
          },
          py::arg("x"), py::arg("u"), py::arg("g"))
      .def(
          "reward",
          [](const Environment& e, std::size_t x, std::size_t u, const std::vector<double>& g) {
            return e.reward(x, u, g);
          },
          py::arg("x"), py::arg("u"), py::arg("g"));

  py::class_<ExperimentConfig>(m, "Config")
      .def_static("from_text", &parse_config, py::arg("text"))
      .def_static("load", &load_config, py::arg("path"))
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readonly("environment", &ExperimentConfig::environment)
      .def_property_readonly("classes", &ExperimentConfig::num_classes)
      .def("canonical", &ExperimentConfig::canonical)
      .def("hash", &ExperimentConfig::hash)
      .def("graphon", [](const ExperimentConfig& c) { return make_graphon(c.graphon); })
      .def("environment_model", [](const ExperimentConfig& c) { return c.make_environment(); });

  m.def(
      "solve",
      [](const ExperimentConfig& cfg) {
        const OmdResult r = solve_equilibrium(cfg);
        py::list trace;
        for (const auto& e : r.trace.entries)
          trace.append(py::make_tuple(e.iteration, e.exploitability));
        py::dict out;
        out["policy"] = policy_array(r.policy);
        out["mean_field"] = meanfield_array(r.mean_field);
        out["trace"] = trace;
        return out;
      },
      py::arg("config"), "OMD equilibrium: policy, mean field and exploitability trace.");

  m.def(
      "exploitability",
      [](const Environment& env, py::array_t<double> policy, const Graphon& w) {
        const PolicyEnsemble pi = policy_from(policy);
        return exploitability(env, pi, discretize(w, pi.classes()));
      },
      py::arg("env"), py::arg("policy"), py::arg("graphon"));

  m.def(
      "mean_field",
      [](const Environment& env, py::array_t<double> policy, const Graphon& w) {
        const PolicyEnsemble pi = policy_from(policy);
        return meanfield_array(forward(env, pi, discretize(w, pi.classes())));
      },
      py::arg("env"), py::arg("policy"), py::arg("graphon"));

  m.def(
      "sweep",
      [](const Environment& env, const Graphon& w, py::array_t<double> policy,
         std::vector<double> betas, std::vector<std::size_t> ns, std::size_t samples,
         std::uint64_t seed, const std::string& placement, unsigned threads) {
        SweepOptions o;
        o.betas = std::move(betas);
        o.ns = std::move(ns);
        o.samples = samples;
        o.base_seed = seed;
        o.placement = parse_placement(placement);
        o.threads = threads;
        std::vector<SweepRow> rows;
        const PolicyEnsemble pi = policy_from(policy);
        {
          py::gil_scoped_release release;
          rows = sweep_convergence(env, w, pi, o);
        }
        py::list out;
        for (const auto& r : rows)
          out.append(py::make_tuple(r.beta, r.n, r.k, r.mean_dmu, r.stderr_dmu));
        return out;
      },
      py::arg("env"), py::arg("graphon"), py::arg("policy"), py::arg("betas"), py::arg("ns"),
      py::arg("samples") = 50, py::arg("seed") = 0, py::arg("placement") = "equispaced",
      py::arg("threads") = 1, "Rows of (beta, n, k, mean_dmu, stderr_dmu).");

  m.def(
      "run",
      [](const ExperimentConfig& cfg, const std::string& command, const std::string& out,
         unsigned threads) {
        RunOptions o;
        o.out = out;
        o.threads = threads;
        const auto r = run_experiment(cfg, parse_command(command), o);
        if (r.status != 0) throw Error(r.message);
        std::vector<std::string> files;
        for (const auto& e : r.manifest) files.push_back(e.file);
        return files;
      },
      py::arg("config"), py::arg("command"), py::arg("out"), py::arg("threads") = 1,
      "Runs a subcommand and returns the written file names.");
}
