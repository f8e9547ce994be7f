#include "lanecraft/dqn/policy.hpp"

#include <stdexcept>

namespace lanecraft::dqn {

void EpsilonSchedule::validate() const {
  if (!(0 <= end && end <= start && start <= 1)) {
    throw std::invalid_argument("epsilon schedule needs 0 <= end <= start <= 1");
  }
  if (decay_iterations <= 0) throw std::invalid_argument("epsilon decay iterations must be positive");
}

double epsilon_at(long iteration, const EpsilonSchedule& s) {
  if (iteration < 0) throw std::invalid_argument("iteration must be non-negative");
  if (iteration >= s.decay_iterations) return s.end;
  const double frac = static_cast<double>(iteration) / static_cast<double>(s.decay_iterations);
  return s.start + (s.end - s.start) * frac;
}

int greedy_action(std::span<const double> q) {
  if (q.empty()) throw std::invalid_argument("no Q-values");
  int best = 0;
  for (std::size_t a = 1; a < q.size(); ++a) {
    if (q[a] > q[best]) best = static_cast<int>(a);
  }
  return best;
}

int select_action(const nn::QNetwork& net, std::span<const double> observation, double epsilon,
                  Rng& rng) {
  if (!(epsilon >= 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must be in [0, 1]");
  const double u = uniform(rng, 0.0, 1.0);
  if (u < epsilon) return uniform_index(rng, net.output_count());
  return greedy_action(net.forward(observation));
}

double double_dqn_target(double reward, bool terminal, std::span<const double> q_online_next,
                         std::span<const double> q_target_next, double gamma) {
  if (terminal) return reward;
  if (q_online_next.size() != q_target_next.size()) {
    throw std::invalid_argument("online and target heads differ in size");
  }
  return reward + gamma * q_target_next[greedy_action(q_online_next)];
}

double double_dqn_target(double reward, std::span<const double> next_state, bool terminal,
                         const nn::QNetwork& online, const nn::QNetwork& target, double gamma) {
  if (terminal) return reward;
  const auto q_online = online.forward(next_state);
  const auto q_target = target.forward(next_state);
  return double_dqn_target(reward, false, q_online, q_target, gamma);
}

}  // namespace lanecraft::dqn
