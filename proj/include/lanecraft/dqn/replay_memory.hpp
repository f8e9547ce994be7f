#pragma once

#include <cstdint>
#include <vector>

#include "lanecraft/common/rng.hpp"
#include "lanecraft/env/observation.hpp"

namespace lanecraft::dqn {

struct Experience {
  env::Observation state{};
  int action = 0;
  double reward = 0;
  env::Observation next_state{};
  bool terminal = false;
};

/// Fixed-capacity FIFO of experiences with uniform sampling.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity);

  void push(const Experience& e);

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t insertions() const { return insertions_; }

  /// i = 0 is the oldest stored experience.
  const Experience& at(std::size_t i) const;

  /// `count` draws, uniform with replacement.
  std::vector<const Experience*> sample(std::size_t count, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::vector<Experience> items_;
  std::size_t head_ = 0;  ///< slot of the oldest item once full
  std::uint64_t insertions_ = 0;
};

}  // namespace lanecraft::dqn
