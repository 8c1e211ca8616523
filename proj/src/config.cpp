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

#include "lpgmfg/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lpgmfg/error.hpp"

namespace lpgmfg {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string field_name(const std::string& section, const std::string& key) {
  return section.empty() ? key : "[" + section + "] " + key;
}

double to_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v))
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  return v;
}

std::uint64_t to_u64(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!t.empty() && t[0] != '-') v = std::stoull(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size())
    throw ConfigError(field + ": expected a nonnegative integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(field + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(to_double(field, s));
  return out;
}

void check(bool ok, const std::string& field, const std::string& bound) {
  if (!ok) throw ConfigError(field + " out of range: must be " + bound);
}

// Key handlers for one section; every key of the section must be handled.
using Handler = std::function<void(const std::string& field, const std::string& value)>;
using Section = std::map<std::string, Handler>;

Handler number(double& target) {
  return [&target](const std::string& f, const std::string& v) { target = to_double(f, v); };
}

Handler count(std::size_t& target) {
  return [&target](const std::string& f, const std::string& v) {
    target = static_cast<std::size_t>(to_u64(f, v));
  };
}

Handler placement(Placement& target) {
  return [&target](const std::string& f, const std::string& v) {
    try {
      target = parse_placement(trim(v));
    } catch (const Error& e) {
      throw ConfigError(f + ": " + e.what());
    }
  };
}

Handler policy_choice(bool& equilibrium) {
  return [&equilibrium](const std::string& f, const std::string& v) {
    const std::string t = trim(v);
    if (t == "equilibrium") equilibrium = true;
    else if (t == "uniform") equilibrium = false;
    else throw ConfigError(f + ": unknown policy '" + t + "' (valid: equilibrium, uniform)");
  };
}

void add_block(Section& s, CyberBlock& b, const std::string& prefix) {
  s[prefix + "q_rec_d"] = number(b.q_rec_d);
  s[prefix + "q_rec_u"] = number(b.q_rec_u);
  s[prefix + "lambda"] = number(b.lambda);
  s[prefix + "v_h"] = number(b.v_h);
  s[prefix + "z_inf_d"] = number(b.z_inf_d);
  s[prefix + "z_inf_u"] = number(b.z_inf_u);
  s[prefix + "beta_dd"] = number(b.beta_dd);
  s[prefix + "beta_ud"] = number(b.beta_ud);
  s[prefix + "beta_du"] = number(b.beta_du);
  s[prefix + "beta_uu"] = number(b.beta_uu);
  s[prefix + "k_d"] = number(b.k_d);
  s[prefix + "k_i"] = number(b.k_i);
}

Section graphon_section(GraphonDescriptor& d) {
  Section s;
  s["kind"] = [&d](const std::string&, const std::string& v) { d.kind = trim(v); };
  for (const char* name : {"exponent", "cutoff", "value", "border_width", "clamp_max"}) {
    s[name] = [&d, name](const std::string& f, const std::string& v) {
      d.params[name] = to_double(f, v);
    };
  }
  s["values"] = [&d](const std::string& f, const std::string& v) { d.values = to_doubles(f, v); };
  return s;
}

void validate_graphon(const GraphonDescriptor& d, const std::string& section) {
  try {
    (void)make_graphon(d);
  } catch (const Error& e) {
    throw ConfigError("[" + section + "] " + e.what());
  }
}

void validate(const ExperimentConfig& c) {
  bool known = false;
  for (const char* name : kEnvironmentNames) known = known || c.environment == name;
  if (!known)
    throw ConfigError("unknown environment '" + c.environment +
                      "' (valid: cyber, hetero_cyber, beach)");
  validate_graphon(c.graphon, "graphon");
  if (c.cutnorm.against) validate_graphon(*c.cutnorm.against, "cutnorm_against");
  if (c.classes) check(*c.classes >= 1, "[discretization] classes", ">= 1");

  check(c.omd.gamma > 0.0, "[omd] gamma", "> 0");
  check(c.omd.eval_every >= 1, "[omd] eval_every", ">= 1");

  if (c.sweep.betas.empty()) throw ConfigError("[sweep] betas must not be empty");
  if (c.sweep.ns.empty()) throw ConfigError("[sweep] ns must not be empty");
  for (double b : c.sweep.betas) check(b > 0.0 && b < 1.0, "[sweep] betas", "in (0, 1)");
  for (std::size_t n : c.sweep.ns) check(n >= 1, "[sweep] ns", ">= 1");
  check(c.sweep.samples >= 2, "[sweep] samples", ">= 2");

  check(c.simulate.n >= 1, "[simulate] n", ">= 1");
  check(c.simulate.beta > 0.0 && c.simulate.beta < 1.0, "[simulate] beta", "in (0, 1)");

  check(c.graph.n >= 1, "[graph] n", ">= 1");
  if (c.graph.rho) check(*c.graph.rho > 0.0, "[graph] rho", "> 0");
  else check(c.graph.beta > 0.0 && c.graph.beta < 1.0, "[graph] beta", "in (0, 1)");

  check(c.cutnorm.grid >= 1, "[cutnorm] grid", ">= 1");
  check(c.cutnorm.restarts >= 1, "[cutnorm] restarts", ">= 1");
  check(c.cutnorm.quadrature >= 1, "[cutnorm] quadrature", ">= 1");
  check(c.cutnorm.smoothing >= 0.0, "[cutnorm] smoothing", ">= 0");

  // Every environment section is checked, not only the selected one.
  auto probe = [](const char* section, auto&& make) {
    try {
      (void)make();
    } catch (const Error& e) {
      throw ConfigError("[" + std::string(section) + "] " + e.what());
    }
  };
  probe("cyber", [&c] { return make_cyber_env(c.cyber); });
  probe("hetero_cyber", [&c] { return make_hetero_cyber_env(c.hetero_cyber); });
  probe("beach", [&c] { return make_beach_env(c.beach); });
}

template <class T>
void put(std::ostringstream& os, const char* key, const T& value) {
  os << key << " = " << value << '\n';
}

template <class T>
void put_list(std::ostringstream& os, const char* key, const std::vector<T>& values) {
  os << key << " =";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : " ") << values[i];
  os << '\n';
}

void put_block(std::ostringstream& os, const CyberBlock& b, const std::string& prefix) {
  const std::pair<const char*, double> fields[] = {
      {"q_rec_d", b.q_rec_d}, {"q_rec_u", b.q_rec_u}, {"lambda", b.lambda},
      {"v_h", b.v_h},         {"z_inf_d", b.z_inf_d}, {"z_inf_u", b.z_inf_u},
      {"beta_dd", b.beta_dd}, {"beta_ud", b.beta_ud}, {"beta_du", b.beta_du},
      {"beta_uu", b.beta_uu}, {"k_d", b.k_d},         {"k_i", b.k_i}};
  for (const auto& [name, value] : fields) os << prefix << name << " = " << value << '\n';
}

void put_graphon(std::ostringstream& os, const GraphonDescriptor& d) {
  put(os, "kind", d.kind);
  for (const auto& [k, v] : d.params) put(os, k.c_str(), v);
  if (!d.values.empty()) put_list(os, "values", d.values);
}

}  // namespace

std::size_t ExperimentConfig::num_classes() const {
  if (classes) return *classes;
  return environment == "beach" ? 10 : 25;
}

std::unique_ptr<Environment> ExperimentConfig::make_environment() const {
  if (environment == "cyber") return make_cyber_env(cyber);
  if (environment == "hetero_cyber") return make_hetero_cyber_env(hetero_cyber);
  if (environment == "beach") return make_beach_env(beach);
  throw ConfigError("unknown environment '" + environment +
                    "' (valid: cyber, hetero_cyber, beach)");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os.precision(17);
  put(os, "environment", environment);
  put(os, "seed", seed);
  put(os, "output", output);
  os << "\n[graphon]\n";
  put_graphon(os, graphon);
  os << "\n[discretization]\n";
  put(os, "classes", num_classes());
  os << "\n[omd]\n";
  put(os, "gamma", omd.gamma);
  put(os, "iterations", omd.iterations);
  put(os, "eval_every", omd.eval_every);
  os << "\n[sweep]\n";
  put_list(os, "betas", sweep.betas);
  put_list(os, "ns", sweep.ns);
  put(os, "samples", sweep.samples);
  put(os, "placement", to_string(sweep.placement));
  put(os, "policy", sweep.equilibrium_policy ? "equilibrium" : "uniform");
  os << "\n[simulate]\n";
  put(os, "n", simulate.n);
  put(os, "beta", simulate.beta);
  put(os, "placement", to_string(simulate.placement));
  put(os, "policy", simulate.equilibrium_policy ? "equilibrium" : "uniform");
  os << "\n[graph]\n";
  put(os, "n", graph.n);
  put(os, "beta", graph.beta);
  put(os, "placement", to_string(graph.placement));
  if (graph.rho) put(os, "rho", *graph.rho);
  put(os, "export_edges", graph.export_edges ? "true" : "false");
  os << "\n[cutnorm]\n";
  put(os, "grid", cutnorm.grid);
  put(os, "restarts", cutnorm.restarts);
  put(os, "quadrature", cutnorm.quadrature);
  put(os, "smoothing", cutnorm.smoothing);
  if (cutnorm.against) {
    os << "\n[cutnorm_against]\n";
    put_graphon(os, *cutnorm.against);
  }
  // Only the selected environment's parameters affect results.
  if (environment == "cyber") {
    os << "\n[cyber]\n";
    put(os, "horizon", cyber.horizon);
    put_list(os, "mu0", cyber.mu0);
    put_block(os, cyber.block, "");
  } else if (environment == "hetero_cyber") {
    os << "\n[hetero_cyber]\n";
    put(os, "horizon", hetero_cyber.horizon);
    put_list(os, "mu0", hetero_cyber.mu0);
    put(os, "pooled_infection", hetero_cyber.pooled_infection ? "true" : "false");
    put_block(os, hetero_cyber.pri, "pri_");
    put_block(os, hetero_cyber.cor, "cor_");
  } else if (environment == "beach") {
    os << "\n[beach]\n";
    put(os, "positions", beach.num_positions);
    put(os, "horizon", beach.horizon);
    put(os, "noise", beach.noise);
    put(os, "distance_weight", beach.effective_distance_weight());
    put(os, "move_weight", beach.effective_move_weight());
    put(os, "crowd_weight", beach.crowd_weight);
    put(os, "boundary", beach.boundary == Boundary::kWrap ? "wrap" : "clamp");
    put(os, "reward_sign_as_printed", beach.reward_sign_as_printed ? "true" : "false");
    if (!beach.mu0.empty()) put_list(os, "mu0", beach.mu0);
  }
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    // '#' comments are accepted alongside ';'; blank lines keep line numbers.
    std::string cleaned;
    std::istringstream lines{std::string(text)};
    for (std::string line; std::getline(lines, line);) {
      const std::string t = trim(line);
      cleaned += (!t.empty() && t[0] == '#') ? std::string() : line;
      cleaned += '\n';
    }
    std::istringstream is{cleaned};
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("parse error at line " + std::to_string(e.line()) + ": " + e.message());
  }

  ExperimentConfig c;
  std::map<std::string, Section> sections;

  Section top;
  top["environment"] = [&c](const std::string&, const std::string& v) { c.environment = trim(v); };
  top["seed"] = [&c](const std::string& f, const std::string& v) { c.seed = to_u64(f, v); };
  top["output"] = [&c](const std::string&, const std::string& v) { c.output = trim(v); };
  sections["experiment"] = top;

  sections["graphon"] = graphon_section(c.graphon);
  sections["discretization"]["classes"] = [&c](const std::string& f, const std::string& v) {
    c.classes = static_cast<std::size_t>(to_u64(f, v));
  };

  Section& omd = sections["omd"];
  omd["gamma"] = number(c.omd.gamma);
  omd["iterations"] = count(c.omd.iterations);
  omd["eval_every"] = count(c.omd.eval_every);

  Section& sweep = sections["sweep"];
  sweep["betas"] = [&c](const std::string& f, const std::string& v) {
    c.sweep.betas = to_doubles(f, v);
  };
  sweep["ns"] = [&c](const std::string& f, const std::string& v) {
    c.sweep.ns.clear();
    for (const auto& s : split_list(v)) c.sweep.ns.push_back(static_cast<std::size_t>(to_u64(f, s)));
  };
  sweep["samples"] = count(c.sweep.samples);
  sweep["placement"] = placement(c.sweep.placement);
  sweep["policy"] = policy_choice(c.sweep.equilibrium_policy);

  Section& sim = sections["simulate"];
  sim["n"] = count(c.simulate.n);
  sim["beta"] = number(c.simulate.beta);
  sim["placement"] = placement(c.simulate.placement);
  sim["policy"] = policy_choice(c.simulate.equilibrium_policy);

  Section& graph = sections["graph"];
  graph["n"] = count(c.graph.n);
  graph["beta"] = number(c.graph.beta);
  graph["placement"] = placement(c.graph.placement);
  graph["rho"] = [&c](const std::string& f, const std::string& v) { c.graph.rho = to_double(f, v); };
  graph["export_edges"] = [&c](const std::string& f, const std::string& v) {
    c.graph.export_edges = to_bool(f, v);
  };

  Section& cut = sections["cutnorm"];
  cut["grid"] = count(c.cutnorm.grid);
  cut["restarts"] = count(c.cutnorm.restarts);
  cut["quadrature"] = count(c.cutnorm.quadrature);
  cut["smoothing"] = number(c.cutnorm.smoothing);
  GraphonDescriptor against;
  sections["cutnorm_against"] = graphon_section(against);

  Section& cyber = sections["cyber"];
  cyber["horizon"] = count(c.cyber.horizon);
  cyber["mu0"] = [&c](const std::string& f, const std::string& v) { c.cyber.mu0 = to_doubles(f, v); };
  add_block(cyber, c.cyber.block, "");

  Section& het = sections["hetero_cyber"];
  het["horizon"] = count(c.hetero_cyber.horizon);
  het["mu0"] = [&c](const std::string& f, const std::string& v) {
    c.hetero_cyber.mu0 = to_doubles(f, v);
  };
  het["pooled_infection"] = [&c](const std::string& f, const std::string& v) {
    c.hetero_cyber.pooled_infection = to_bool(f, v);
  };
  add_block(het, c.hetero_cyber.pri, "pri_");
  add_block(het, c.hetero_cyber.cor, "cor_");

  Section& beach = sections["beach"];
  beach["positions"] = count(c.beach.num_positions);
  beach["horizon"] = count(c.beach.horizon);
  beach["noise"] = number(c.beach.noise);
  beach["distance_weight"] = number(c.beach.distance_weight);
  beach["move_weight"] = number(c.beach.move_weight);
  beach["crowd_weight"] = number(c.beach.crowd_weight);
  beach["boundary"] = [&c](const std::string& f, const std::string& v) {
    const std::string t = trim(v);
    if (t == "clamp") c.beach.boundary = Boundary::kClamp;
    else if (t == "wrap") c.beach.boundary = Boundary::kWrap;
    else throw ConfigError(f + ": unknown boundary '" + t + "' (valid: clamp, wrap)");
  };
  beach["reward_sign_as_printed"] = [&c](const std::string& f, const std::string& v) {
    c.beach.reward_sign_as_printed = to_bool(f, v);
  };
  beach["mu0"] = [&c](const std::string& f, const std::string& v) { c.beach.mu0 = to_doubles(f, v); };

  auto apply = [](Section& section, const std::string& name, const std::string& key,
                  const std::string& value) {
    const auto it = section.find(key);
    if (it == section.end()) throw ConfigError("unknown field " + field_name(name, key));
    it->second(field_name(name, key), value);
  };

  bool against_seen = false;
  for (const auto& [name, node] : tree) {
    if (node.empty() && !(node.data().empty() && sections.count(name))) {
      // Top-level key before any section header.
      apply(sections["experiment"], "", name, node.data());
      continue;
    }
    const auto sit = sections.find(name);
    if (sit == sections.end()) throw ConfigError("unknown section [" + name + "]");
    if (name == "cutnorm_against") against_seen = true;
    for (const auto& [key, leaf] : node) apply(sit->second, name, key, leaf.data());
  }
  if (against_seen) c.cutnorm.against = against;

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace lpgmfg
