#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lanecraft/common/rng.hpp"

namespace lanecraft::nn {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Architecture : std::uint32_t { kFcnn = 0, kCnn = 1 };

const char* to_string(Architecture arch);
Architecture architecture_from_string(const std::string& name);

/// Layer sizes of the two Q-network variants.
///
/// FCNN: 27 -> hidden -> hidden -> outputs, ReLU on the hidden layers.
///
/// CNN: the 24 object inputs are read as 8 rows of 3 features. A shared
/// 3 -> conv1 filter (size and stride 3) and a conv1 -> conv2 filter (size 1)
/// run on every row, the result is max-pooled over the 8 rows, concatenated
/// with the 3 ego inputs, and fed through a dense layer of `full` ReLU units
/// and a linear head. Pooling over rows makes the output independent of the
/// order of the vehicle blocks.
struct NetworkShape {
  static constexpr int kInputs = 27;
  static constexpr int kEgoInputs = 3;
  static constexpr int kObjects = 8;
  static constexpr int kObjectFeatures = 3;

  Architecture architecture = Architecture::kCnn;
  int outputs = 3;
  int hidden = 512;
  int conv1 = 32;
  int conv2 = 32;
  int full = 64;

  void validate() const;
  bool operator==(const NetworkShape&) const = default;
};

enum class LayerKind : std::uint32_t { kDense = 0, kObjectConv = 1 };

/// Weights (outputs x inputs, row-major) followed by the bias vector, starting
/// at `offset` in the flat parameter array.
struct LayerDescriptor {
  LayerKind kind;
  int inputs;
  int outputs;
  std::size_t offset;

  std::size_t weight_count() const { return static_cast<std::size_t>(inputs) * outputs; }
  std::size_t parameter_count() const { return weight_count() + outputs; }
  bool operator==(const LayerDescriptor&) const = default;
};

std::vector<LayerDescriptor> layer_layout(const NetworkShape& shape);
std::size_t parameter_count(const NetworkShape& shape);

/// Flat gradient congruent with QNetwork::parameters().
struct GradientSet {
  std::vector<double> values;
};

class QNetwork {
 public:
  /// All parameters zero.
  explicit QNetwork(NetworkShape shape);
  /// Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases.
  static QNetwork initialized(NetworkShape shape, Rng& rng);

  /// Intermediate values of a batched forward pass, consumed by backward().
  struct Activations {
    Matrix input;
    Matrix objects;    // CNN: (8B x 3)
    Matrix hidden1;    // FCNN: h1; CNN: conv1 output (8B x conv1)
    Matrix hidden2;    // FCNN: h2; CNN: conv2 output (8B x conv2)
    Matrix features;   // CNN: pooled + ego inputs (B x conv2+3)
    Matrix dense;      // CNN: fully connected layer output (B x full)
    std::vector<int> pool_argmax;  // CNN: (B x conv2) winning row per channel
  };

  const NetworkShape& shape() const { return shape_; }
  const std::vector<LayerDescriptor>& layers() const { return layers_; }
  int output_count() const { return shape_.outputs; }
  std::size_t parameter_count() const { return params_.size(); }
  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  /// Q-values for a batch of observations (one per row).
  Matrix forward(const Matrix& inputs) const;
  Matrix forward(const Matrix& inputs, Activations& cache) const;
  std::vector<double> forward(std::span<const double> observation) const;

  /// Adds d(sum(output_gradient .* Q))/d(theta) to `grads`.
  void backward(const Activations& cache, const Matrix& output_gradient, GradientSet& grads) const;
  GradientSet backward(std::span<const double> observation,
                       std::span<const double> output_gradient) const;

  GradientSet zero_gradients() const { return GradientSet{std::vector<double>(params_.size(), 0.0)}; }

  /// Bitwise parameter and shape equality.
  bool operator==(const QNetwork& other) const;

 private:
  Matrix forward_fcnn(const Matrix& inputs, Activations* cache) const;
  Matrix forward_cnn(const Matrix& inputs, Activations* cache) const;
  void check_input(const Matrix& inputs) const;

  NetworkShape shape_;
  std::vector<LayerDescriptor> layers_;
  std::vector<double> params_;
};

/// Packs observations into a batch matrix.
Matrix to_batch(std::span<const double> observation);

}  // namespace lanecraft::nn
