#pragma once

#include <span>
#include <vector>

#include "lanecraft/dqn/replay_memory.hpp"
#include "lanecraft/nn/qnetwork.hpp"
#include "lanecraft/nn/rmsprop.hpp"

namespace lanecraft::dqn {

struct LearnerConfig {
  double gamma = 0.99;
  int minibatch = 32;
  double error_clip = 1.0;
  nn::RmsPropConfig optimizer;

  void validate() const;
};

struct BatchGradient {
  nn::GradientSet gradients;
  std::vector<double> td_errors;  ///< unclipped target - Q(s, a)
  double loss = 0;                ///< mean of clip(td)^2 / 2
};

struct UpdateStats {
  double loss = 0;
  double mean_abs_td = 0;
};

/// Online and target Q-networks with the Double DQN update rule. Loss is the
/// minibatch mean of half the squared TD error with the error clipped to
/// [-error_clip, error_clip] before squaring, so the gradient with respect to
/// Q(s, a) is -clip(td) / batch.
class DqnLearner {
 public:
  DqnLearner(nn::QNetwork online, LearnerConfig config);

  const nn::QNetwork& online() const { return online_; }
  const nn::QNetwork& target() const { return target_; }
  nn::QNetwork& online_mutable() { return online_; }
  const LearnerConfig& config() const { return config_; }
  const nn::RmsProp& optimizer() const { return optimizer_; }
  long updates() const { return updates_; }

  /// theta_target <- theta_online.
  void sync_target() { target_ = online_; }

  /// Double DQN targets for a batch, using the current networks.
  std::vector<double> targets(std::span<const Experience* const> batch) const;

  BatchGradient compute_gradients(std::span<const Experience* const> batch) const;

  /// One optimizer step on the given batch.
  UpdateStats train_on(std::span<const Experience* const> batch);

  /// Samples a minibatch uniformly and trains on it.
  UpdateStats train_step(const ReplayMemory& replay, Rng& rng);

 private:
  nn::QNetwork online_;
  nn::QNetwork target_;
  LearnerConfig config_;
  nn::RmsProp optimizer_;
  long updates_ = 0;
};

}  // namespace lanecraft::dqn
