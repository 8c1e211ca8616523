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

#ifndef LPGMFG_ENVS_HPP_
#define LPGMFG_ENVS_HPP_

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lpgmfg/mfg.hpp"

namespace lpgmfg {

// 1 - (1 - p_direct)(1 - min(1, p_from_d))(1 - min(1, p_from_u)), the
// complement-product form of the inclusion-exclusion infection probability.
// Throws ParameterError on negative input.
double q_infection(double p_direct, double p_from_d, double p_from_u);

// Infection, recovery and cost parameters of one population of computers.
// Infection coefficients are named beta_<neighbor><self>: beta_ud is the rate
// at which an unprotected infected neighbor infects a defended computer.
struct CyberBlock {
  double q_rec_d = 0.3;
  double q_rec_u = 0.2;
  double lambda = 0.3;
  double v_h = 0.1;
  double z_inf_d = 0.05;
  double z_inf_u = 0.1;
  double beta_dd = 0.1;
  double beta_ud = 0.2;
  double beta_du = 0.7;
  double beta_uu = 0.8;
  double k_d = 0.7;
  double k_i = 2.0;

  void validate(const std::string& where) const;
};

enum CyberState : std::size_t { kDI = 0, kDS = 1, kUI = 2, kUS = 3 };

struct CyberParams {
  std::size_t horizon = 50;
  std::vector<double> mu0{0.25, 0.25, 0.25, 0.25};
  CyberBlock block;
};

// Private and corporate computers; the owner type is part of the state
// (PriDI, PriDS, PriUI, PriUS, CorDI, CorDS, CorUI, CorUS).
struct HeteroCyberParams {
  std::size_t horizon = 50;
  std::vector<double> mu0 = std::vector<double>(8, 0.125);
  CyberBlock pri{0.4, 0.3, 0.3, 0.1, 0.05, 0.1, 0.2, 0.3, 0.9, 1.0, 0.6, 2.0};
  CyberBlock cor{0.4, 0.3, 0.3, 0.1, 0.05, 0.1, 0.1, 0.2, 0.7, 0.8, 0.7, 2.0};
  // When set, both blocks are infected through the pooled infected mass of
  // Pri and Cor neighbors instead of their own block's mass only.
  bool pooled_infection = false;
};

enum class Boundary { kClamp, kWrap };

struct BeachParams {
  std::size_t num_positions = 10;
  std::size_t horizon = 30;
  double noise = 0.05;
  // Negative values select the defaults 2/|X|.
  double distance_weight = -1.0;
  double move_weight = -1.0;
  double crowd_weight = 3.0;
  Boundary boundary = Boundary::kClamp;
  // Rewards distance from the bar exactly as the formula is printed instead
  // of treating both distance terms as costs.
  bool reward_sign_as_printed = false;
  // Empty means uniform over positions.
  std::vector<double> mu0;

  std::size_t bar() const { return num_positions / 2; }
  double effective_distance_weight() const;
  double effective_move_weight() const;
};

// One 4x4 cyber transition row (DI, DS, UI, US) for state x and action u,
// reading infected-neighbor mass from g_di and g_ui.
std::array<double, 4> cyber_row(std::size_t x, std::size_t u, double g_di, double g_ui,
                                const CyberBlock& p);

class CyberEnvironment final : public Environment {
 public:
  explicit CyberEnvironment(CyberParams params);

  std::size_t num_states() const override { return 4; }
  std::size_t num_actions() const override { return 2; }
  std::size_t horizon() const override { return params_.horizon; }
  std::span<const double> initial_distribution() const override { return params_.mu0; }
  void transition(std::size_t x, std::size_t u, std::span<const double> g,
                  std::span<double> out) const override;
  double reward(std::size_t x, std::size_t u, std::span<const double> g) const override;
  std::string name() const override { return "cyber"; }
  std::vector<std::string> state_names() const override;
  const CyberParams& params() const { return params_; }

 private:
  CyberParams params_;
};

class HeteroCyberEnvironment final : public Environment {
 public:
  explicit HeteroCyberEnvironment(HeteroCyberParams params);

  std::size_t num_states() const override { return 8; }
  std::size_t num_actions() const override { return 2; }
  std::size_t horizon() const override { return params_.horizon; }
  std::span<const double> initial_distribution() const override { return params_.mu0; }
  void transition(std::size_t x, std::size_t u, std::span<const double> g,
                  std::span<double> out) const override;
  double reward(std::size_t x, std::size_t u, std::span<const double> g) const override;
  std::string name() const override { return "hetero_cyber"; }
  std::vector<std::string> state_names() const override;
  const HeteroCyberParams& params() const { return params_; }

 private:
  HeteroCyberParams params_;
};

// Actions 0, 1, 2 move the towel by -1, 0, +1.
class BeachEnvironment final : public Environment {
 public:
  explicit BeachEnvironment(BeachParams params);

  std::size_t num_states() const override { return params_.num_positions; }
  std::size_t num_actions() const override { return 3; }
  std::size_t horizon() const override { return params_.horizon; }
  std::span<const double> initial_distribution() const override { return params_.mu0; }
  void transition(std::size_t x, std::size_t u, std::span<const double> g,
                  std::span<double> out) const override;
  double reward(std::size_t x, std::size_t u, std::span<const double> g) const override;
  std::string name() const override { return "beach"; }
  const BeachParams& params() const { return params_; }

 private:
  std::size_t apply_boundary(long long position) const;

  BeachParams params_;
};

std::unique_ptr<Environment> make_cyber_env(const CyberParams& p);
std::unique_ptr<Environment> make_hetero_cyber_env(const HeteroCyberParams& p);
std::unique_ptr<Environment> make_beach_env(const BeachParams& p);

}  // namespace lpgmfg

#endif  // LPGMFG_ENVS_HPP_
