#pragma once

#include <span>
#include <vector>

namespace lanecraft::nn {

/// RMSProp without momentum:
///   acc   <- decay * acc + (1 - decay) * g^2
///   theta <- theta - learning_rate * g / (sqrt(acc) + epsilon)
struct RmsPropConfig {
  double learning_rate = 0.00025;
  double decay = 0.95;
  double epsilon = 0.01;

  void validate() const;
};

class RmsProp {
 public:
  RmsProp(RmsPropConfig config, std::size_t parameter_count);

  void step(std::span<double> parameters, std::span<const double> gradients);

  const RmsPropConfig& config() const { return config_; }
  std::span<const double> accumulators() const { return mean_square_; }

 private:
  RmsPropConfig config_;
  std::vector<double> mean_square_;
};

}  // namespace lanecraft::nn
