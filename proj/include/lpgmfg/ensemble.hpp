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

#ifndef LPGMFG_ENSEMBLE_HPP_
#define LPGMFG_ENSEMBLE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace lpgmfg {

// Dense [class][time][state] table. The tag keeps state marginals and
// neighborhood measures apart at the type level.
template <class Tag>
class StateTable {
 public:
  StateTable() = default;
  StateTable(std::size_t classes, std::size_t times, std::size_t states)
      : classes_(classes), times_(times), states_(states), data_(classes * times * states, 0.0) {}

  std::size_t classes() const { return classes_; }
  std::size_t times() const { return times_; }
  std::size_t states() const { return states_; }

  std::span<double> at(std::size_t m, std::size_t t) {
    return {data_.data() + (m * times_ + t) * states_, states_};
  }
  std::span<const double> at(std::size_t m, std::size_t t) const {
    return {data_.data() + (m * times_ + t) * states_, states_};
  }
  double operator()(std::size_t m, std::size_t t, std::size_t x) const {
    return data_[(m * times_ + t) * states_ + x];
  }
  double& operator()(std::size_t m, std::size_t t, std::size_t x) {
    return data_[(m * times_ + t) * states_ + x];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const StateTable&) const = default;

 private:
  std::size_t classes_ = 0, times_ = 0, states_ = 0;
  std::vector<double> data_;
};

// Dense [class][time][state][action] table.
template <class Tag>
class ActionTable {
 public:
  ActionTable() = default;
  ActionTable(std::size_t classes, std::size_t horizon, std::size_t states, std::size_t actions,
              double fill = 0.0)
      : classes_(classes),
        horizon_(horizon),
        states_(states),
        actions_(actions),
        data_(classes * horizon * states * actions, fill) {}

  std::size_t classes() const { return classes_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  std::span<double> row(std::size_t m, std::size_t t, std::size_t x) {
    return {data_.data() + offset(m, t, x), actions_};
  }
  std::span<const double> row(std::size_t m, std::size_t t, std::size_t x) const {
    return {data_.data() + offset(m, t, x), actions_};
  }
  // Contiguous horizon x states x actions block of one class.
  std::span<const double> class_block(std::size_t m) const {
    return {data_.data() + m * horizon_ * states_ * actions_, horizon_ * states_ * actions_};
  }
  double operator()(std::size_t m, std::size_t t, std::size_t x, std::size_t u) const {
    return data_[offset(m, t, x) + u];
  }
  double& operator()(std::size_t m, std::size_t t, std::size_t x, std::size_t u) {
    return data_[offset(m, t, x) + u];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const ActionTable&) const = default;

 private:
  std::size_t offset(std::size_t m, std::size_t t, std::size_t x) const {
    return ((m * horizon_ + t) * states_ + x) * actions_;
  }

  std::size_t classes_ = 0, horizon_ = 0, states_ = 0, actions_ = 0;
  std::vector<double> data_;
};

struct MeanFieldTag;
struct NeighborhoodTag;
struct PolicyTag;
struct ScoreTag;

// mu[m][t][x], t = 0..T. Every (m, t) slice is a probability vector.
using MeanFieldEnsemble = StateTable<MeanFieldTag>;
// G[m][t][x] = (1/M) sum_j W(a_m, a_j) mu[j][t][x]; a bounded measure.
using NeighborhoodEnsemble = StateTable<NeighborhoodTag>;
// pi[m][t][x][u], t = 0..T-1.
using PolicyEnsemble = ActionTable<PolicyTag>;
// OMD score accumulators y[m][t][x][u].
using ScoreEnsemble = ActionTable<ScoreTag>;

inline PolicyEnsemble uniform_policy(std::size_t classes, std::size_t horizon, std::size_t states,
                                     std::size_t actions) {
  return PolicyEnsemble(classes, horizon, states, actions, 1.0 / static_cast<double>(actions));
}

// Per-class Q[t][x][u].
class QTable {
 public:
  QTable(std::size_t horizon, std::size_t states, std::size_t actions)
      : horizon_(horizon), states_(states), actions_(actions), data_(horizon * states * actions) {}

  std::size_t horizon() const { return horizon_; }
  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }
  double operator()(std::size_t t, std::size_t x, std::size_t u) const {
    return data_[(t * states_ + x) * actions_ + u];
  }
  double& operator()(std::size_t t, std::size_t x, std::size_t u) {
    return data_[(t * states_ + x) * actions_ + u];
  }
  std::span<const double> row(std::size_t t, std::size_t x) const {
    return {data_.data() + (t * states_ + x) * actions_, actions_};
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t horizon_, states_, actions_;
  std::vector<double> data_;
};

}  // namespace lpgmfg

#endif  // LPGMFG_ENSEMBLE_HPP_
