#include "lanecraft/dqn/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lanecraft/dqn/policy.hpp"

namespace lanecraft::dqn {

namespace {

nn::Matrix stack(std::span<const Experience* const> batch, bool next) {
  nn::Matrix m(static_cast<Eigen::Index>(batch.size()), nn::NetworkShape::kInputs);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& obs = next ? batch[i]->next_state : batch[i]->state;
    for (int j = 0; j < nn::NetworkShape::kInputs; ++j) m(static_cast<Eigen::Index>(i), j) = obs[j];
  }
  return m;
}

}  // namespace

void LearnerConfig::validate() const {
  if (!(gamma >= 0 && gamma <= 1)) throw std::invalid_argument("gamma must be in [0, 1]");
  if (minibatch <= 0) throw std::invalid_argument("minibatch must be positive");
  if (!(error_clip > 0)) throw std::invalid_argument("error clip must be positive");
  optimizer.validate();
}

DqnLearner::DqnLearner(nn::QNetwork online, LearnerConfig config)
    : online_(online), target_(online), config_(config),
      optimizer_(config.optimizer, online.parameter_count()) {
  config_.validate();
}

std::vector<double> DqnLearner::targets(std::span<const Experience* const> batch) const {
  const nn::Matrix next = stack(batch, true);
  const nn::Matrix q_online = online_.forward(next);
  const nn::Matrix q_target = target_.forward(next);
  std::vector<double> out(batch.size());
  const auto width = static_cast<std::size_t>(q_online.cols());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out[i] = double_dqn_target(batch[i]->reward, batch[i]->terminal,
                               std::span<const double>(q_online.row(row).data(), width),
                               std::span<const double>(q_target.row(row).data(), width), config_.gamma);
  }
  return out;
}

BatchGradient DqnLearner::compute_gradients(std::span<const Experience* const> batch) const {
  if (batch.empty()) throw std::invalid_argument("empty minibatch");
  const std::vector<double> y = targets(batch);
  nn::QNetwork::Activations cache;
  const nn::Matrix q = online_.forward(stack(batch, false), cache);

  const double n = static_cast<double>(batch.size());
  BatchGradient out{online_.zero_gradients(), std::vector<double>(batch.size()), 0.0};
  nn::Matrix dq = nn::Matrix::Zero(q.rows(), q.cols());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const int a = batch[i]->action;
    if (a < 0 || a >= q.cols()) throw std::out_of_range("experience action outside the network head");
    const auto row = static_cast<Eigen::Index>(i);
    const double td = y[i] - q(row, a);
    const double clipped = std::clamp(td, -config_.error_clip, config_.error_clip);
    out.td_errors[i] = td;
    out.loss += 0.5 * clipped * clipped / n;
    dq(row, a) = -clipped / n;
  }
  online_.backward(cache, dq, out.gradients);
  return out;
}

UpdateStats DqnLearner::train_on(std::span<const Experience* const> batch) {
  BatchGradient g = compute_gradients(batch);
  optimizer_.step(online_.parameters(), g.gradients.values);
  ++updates_;
  UpdateStats stats{g.loss, 0.0};
  for (double td : g.td_errors) stats.mean_abs_td += std::abs(td) / static_cast<double>(g.td_errors.size());
  return stats;
}

UpdateStats DqnLearner::train_step(const ReplayMemory& replay, Rng& rng) {
  const auto batch = replay.sample(static_cast<std::size_t>(config_.minibatch), rng);
  return train_on(batch);
}

}  // namespace lanecraft::dqn
