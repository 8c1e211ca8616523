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

#include "lpgmfg/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpgmfg/error.hpp"

namespace lpgmfg {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void validate_mu0(const std::vector<double>& mu0, std::size_t states, const std::string& where) {
  require(mu0.size() == states, where + ": mu0 must have " + std::to_string(states) + " entries");
  for (double p : mu0) require(p >= 0.0 && std::isfinite(p), where + ": mu0 entries must be >= 0");
  const double mass = std::accumulate(mu0.begin(), mu0.end(), 0.0);
  require(std::abs(mass - 1.0) <= 1e-9, where + ": mu0 must sum to 1");
}

}  // namespace

double q_infection(double p_direct, double p_from_d, double p_from_u) {
  if (p_direct < 0.0 || p_from_d < 0.0 || p_from_u < 0.0 || std::isnan(p_direct) ||
      std::isnan(p_from_d) || std::isnan(p_from_u))
    throw ParameterError("infection probabilities must be >= 0");
  const double safe = (1.0 - std::min(1.0, p_direct)) * (1.0 - std::min(1.0, p_from_d)) *
                      (1.0 - std::min(1.0, p_from_u));
  return std::min(1.0, 1.0 - safe);
}

void CyberBlock::validate(const std::string& where) const {
  for (auto [name, value] : {std::pair{"q_rec_d", q_rec_d}, std::pair{"q_rec_u", q_rec_u},
                             std::pair{"v_h", v_h}, std::pair{"z_inf_d", z_inf_d},
                             std::pair{"z_inf_u", z_inf_u}})
    require(is_probability(value), where + ": " + name + " must lie in [0,1]");
  require(lambda > 0.0 && lambda <= 1.0, where + ": lambda must lie in (0,1]");
  for (auto [name, value] : {std::pair{"beta_dd", beta_dd}, std::pair{"beta_ud", beta_ud},
                             std::pair{"beta_du", beta_du}, std::pair{"beta_uu", beta_uu}})
    require(is_probability(value), where + ": " + name + " must lie in [0,1]");
  require(k_d >= 0.0 && std::isfinite(k_d), where + ": k_d must be >= 0");
  require(k_i >= 0.0 && std::isfinite(k_i), where + ": k_i must be >= 0");
}

std::array<double, 4> cyber_row(std::size_t x, std::size_t u, double g_di, double g_ui,
                                const CyberBlock& p) {
  const double sw = static_cast<double>(u) * p.lambda;  // switch succeeds
  const double st = 1.0 - sw;                           // stays
  switch (x) {
    case kDI:
      return {st * (1.0 - p.q_rec_d), st * p.q_rec_d, sw * (1.0 - p.q_rec_d), sw * p.q_rec_d};
    case kDS: {
      const double q = q_infection(p.v_h * p.z_inf_d, p.beta_dd * g_di, p.beta_ud * g_ui);
      return {st * q, st * (1.0 - q), sw * q, sw * (1.0 - q)};
    }
    case kUI:
      return {sw * (1.0 - p.q_rec_u), sw * p.q_rec_u, st * (1.0 - p.q_rec_u), st * p.q_rec_u};
    case kUS: {
      const double q = q_infection(p.v_h * p.z_inf_u, p.beta_du * g_di, p.beta_uu * g_ui);
      return {sw * q, sw * (1.0 - q), st * q, st * (1.0 - q)};
    }
    default:
      throw ParameterError("cyber state index out of range");
  }
}

namespace {

double cyber_reward(std::size_t local_state, const CyberBlock& p) {
  const bool defended = local_state == kDI || local_state == kDS;
  const bool infected = local_state == kDI || local_state == kUI;
  return -p.k_d * (defended ? 1.0 : 0.0) - p.k_i * (infected ? 1.0 : 0.0);
}

void check_action(std::size_t u, std::size_t actions) {
  if (u >= actions) throw ParameterError("action index out of range");
}

}  // namespace

CyberEnvironment::CyberEnvironment(CyberParams params) : params_(std::move(params)) {
  require(params_.horizon >= 1, "cyber: horizon must be >= 1");
  validate_mu0(params_.mu0, 4, "cyber");
  params_.block.validate("cyber");
}

void CyberEnvironment::transition(std::size_t x, std::size_t u, std::span<const double> g,
                                  std::span<double> out) const {
  check_action(u, 2);
  const auto row = cyber_row(x, u, g[kDI], g[kUI], params_.block);
  std::copy(row.begin(), row.end(), out.begin());
}

double CyberEnvironment::reward(std::size_t x, std::size_t, std::span<const double>) const {
  return cyber_reward(x, params_.block);
}

std::vector<std::string> CyberEnvironment::state_names() const { return {"DI", "DS", "UI", "US"}; }

HeteroCyberEnvironment::HeteroCyberEnvironment(HeteroCyberParams params)
    : params_(std::move(params)) {
  require(params_.horizon >= 1, "hetero_cyber: horizon must be >= 1");
  validate_mu0(params_.mu0, 8, "hetero_cyber");
  params_.pri.validate("hetero_cyber pri");
  params_.cor.validate("hetero_cyber cor");
}

void HeteroCyberEnvironment::transition(std::size_t x, std::size_t u, std::span<const double> g,
                                        std::span<double> out) const {
  check_action(u, 2);
  if (x >= 8) throw ParameterError("hetero_cyber state index out of range");
  const std::size_t base = x < 4 ? 0 : 4;
  const CyberBlock& block = x < 4 ? params_.pri : params_.cor;
  const auto row =
      params_.pooled_infection
          ? cyber_row(x - base, u, g[kDI] + g[4 + kDI], g[kUI] + g[4 + kUI], block)
          : cyber_row(x - base, u, g[base + kDI], g[base + kUI], block);
  std::fill(out.begin(), out.end(), 0.0);
  std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(base));
}

double HeteroCyberEnvironment::reward(std::size_t x, std::size_t, std::span<const double>) const {
  return x < 4 ? cyber_reward(x, params_.pri) : cyber_reward(x - 4, params_.cor);
}

std::vector<std::string> HeteroCyberEnvironment::state_names() const {
  return {"PriDI", "PriDS", "PriUI", "PriUS", "CorDI", "CorDS", "CorUI", "CorUS"};
}

double BeachParams::effective_distance_weight() const {
  return distance_weight < 0.0 ? 2.0 / static_cast<double>(num_positions) : distance_weight;
}

double BeachParams::effective_move_weight() const {
  return move_weight < 0.0 ? 2.0 / static_cast<double>(num_positions) : move_weight;
}

BeachEnvironment::BeachEnvironment(BeachParams params) : params_(std::move(params)) {
  require(params_.num_positions >= 2, "beach: num_positions must be >= 2");
  require(params_.horizon >= 1, "beach: horizon must be >= 1");
  require(params_.noise >= 0.0 && params_.noise < 0.5, "beach: noise must lie in [0,0.5)");
  require(params_.crowd_weight >= 0.0, "beach: crowd_weight must be >= 0");
  if (params_.mu0.empty())
    params_.mu0.assign(params_.num_positions, 1.0 / static_cast<double>(params_.num_positions));
  validate_mu0(params_.mu0, params_.num_positions, "beach");
}

std::size_t BeachEnvironment::apply_boundary(long long position) const {
  const auto n = static_cast<long long>(params_.num_positions);
  if (params_.boundary == Boundary::kWrap) return static_cast<std::size_t>(((position % n) + n) % n);
  return static_cast<std::size_t>(std::clamp(position, 0LL, n - 1));
}

void BeachEnvironment::transition(std::size_t x, std::size_t u, std::span<const double>,
                                  std::span<double> out) const {
  check_action(u, 3);
  if (x >= params_.num_positions) throw ParameterError("beach state index out of range");
  std::fill(out.begin(), out.end(), 0.0);
  // The intended move is resolved against the boundary first, then the noise.
  const auto intended =
      static_cast<long long>(apply_boundary(static_cast<long long>(x) + static_cast<long long>(u) - 1));
  const double p = params_.noise;
  out[apply_boundary(intended - 1)] += p;
  out[apply_boundary(intended)] += 1.0 - 2.0 * p;
  out[apply_boundary(intended + 1)] += p;
}

double BeachEnvironment::reward(std::size_t x, std::size_t u, std::span<const double> g) const {
  const double distance =
      std::abs(static_cast<double>(params_.bar()) - static_cast<double>(x));
  const double move = std::abs(static_cast<double>(u) - 1.0);
  const double sign = params_.reward_sign_as_printed ? 1.0 : -1.0;
  return sign * (params_.effective_distance_weight() * distance +
                 params_.effective_move_weight() * move) -
         params_.crowd_weight * g[x];
}

std::unique_ptr<Environment> make_cyber_env(const CyberParams& p) {
  return std::make_unique<CyberEnvironment>(p);
}

std::unique_ptr<Environment> make_hetero_cyber_env(const HeteroCyberParams& p) {
  return std::make_unique<HeteroCyberEnvironment>(p);
}

std::unique_ptr<Environment> make_beach_env(const BeachParams& p) {
  return std::make_unique<BeachEnvironment>(p);
}

}  // namespace lpgmfg
