#include "lanecraft/dqn/replay_memory.hpp"

#include <stdexcept>

namespace lanecraft::dqn {

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayMemory::push(const Experience& e) {
  if (items_.size() < capacity_) {
    items_.push_back(e);
  } else {
    items_[head_] = e;
    head_ = (head_ + 1) % capacity_;
  }
  ++insertions_;
}

const Experience& ReplayMemory::at(std::size_t i) const {
  if (i >= items_.size()) throw std::out_of_range("replay index out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<const Experience*> ReplayMemory::sample(std::size_t count, Rng& rng) const {
  if (items_.empty()) throw std::logic_error("cannot sample from an empty replay memory");
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<const Experience*> out(count);
  for (auto& p : out) p = &items_[pick(rng)];
  return out;
}

}  // namespace lanecraft::dqn
