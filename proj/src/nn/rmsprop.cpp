#include "lanecraft/nn/rmsprop.hpp"

#include <cmath>
#include <stdexcept>

namespace lanecraft::nn {

void RmsPropConfig::validate() const {
  if (!(learning_rate > 0)) throw std::invalid_argument("learning rate must be positive");
  if (!(decay >= 0 && decay < 1)) throw std::invalid_argument("RMSProp decay must be in [0, 1)");
  if (!(epsilon > 0)) throw std::invalid_argument("RMSProp epsilon must be positive");
}

RmsProp::RmsProp(RmsPropConfig config, std::size_t parameter_count)
    : config_(config), mean_square_(parameter_count, 0.0) {
  config_.validate();
}

void RmsProp::step(std::span<double> parameters, std::span<const double> gradients) {
  if (parameters.size() != mean_square_.size() || gradients.size() != mean_square_.size()) {
    throw std::invalid_argument("RMSProp step: parameter/gradient size mismatch");
  }
  const double rho = config_.decay;
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    const double g = gradients[i];
    mean_square_[i] = rho * mean_square_[i] + (1.0 - rho) * g * g;
    parameters[i] -= config_.learning_rate * g / (std::sqrt(mean_square_[i]) + config_.epsilon);
  }
}

}  // namespace lanecraft::nn
