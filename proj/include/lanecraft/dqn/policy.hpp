#pragma once

#include <span>

#include "lanecraft/common/rng.hpp"
#include "lanecraft/nn/qnetwork.hpp"

namespace lanecraft::dqn {

struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.1;
  long decay_iterations = 500000;

  void validate() const;
};

/// Linear from `start` at iteration 0 to `end` at decay_iterations, then flat.
double epsilon_at(long iteration, const EpsilonSchedule& schedule);

/// Index of the largest Q-value; the lowest index wins ties.
int greedy_action(std::span<const double> q_values);

/// Epsilon-greedy. Always draws one uniform number first, plus one more for a
/// random action.
int select_action(const nn::QNetwork& net, std::span<const double> observation, double epsilon,
                  Rng& rng);

/// r when terminal, else r + gamma * Q_target(s', argmax_a Q_online(s', a)).
double double_dqn_target(double reward, bool terminal, std::span<const double> q_online_next,
                         std::span<const double> q_target_next, double gamma);

double double_dqn_target(double reward, std::span<const double> next_state, bool terminal,
                         const nn::QNetwork& online, const nn::QNetwork& target, double gamma);

}  // namespace lanecraft::dqn
