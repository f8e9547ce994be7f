#include "lanecraft/nn/qnetwork.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace lanecraft::nn {

namespace {

using ConstMatrixMap = Eigen::Map<const Matrix>;
using MatrixMap = Eigen::Map<Matrix>;
using ConstRowMap = Eigen::Map<const Eigen::RowVectorXd>;
using RowMap = Eigen::Map<Eigen::RowVectorXd>;

Matrix affine(const Matrix& x, const LayerDescriptor& layer, const double* params) {
  ConstMatrixMap w(params + layer.offset, layer.outputs, layer.inputs);
  ConstRowMap b(params + layer.offset + layer.weight_count(), layer.outputs);
  Matrix z(x.rows(), layer.outputs);
  z.noalias() = x * w.transpose();
  z.rowwise() += b;
  return z;
}

void relu(Matrix& m) { m = m.cwiseMax(0.0); }

// Gradient through ReLU, using the post-activation to recover the mask.
Matrix relu_backward(const Matrix& upstream, const Matrix& activated) {
  return upstream.cwiseProduct((activated.array() > 0.0).cast<double>().matrix());
}

// Accumulates weight/bias gradients for z = x W^T + b; returns dL/dx if requested.
Matrix affine_backward(const Matrix& x, const Matrix& dz, const LayerDescriptor& layer,
                       const double* params, double* grads, bool need_input_grad) {
  MatrixMap dw(grads + layer.offset, layer.outputs, layer.inputs);
  RowMap db(grads + layer.offset + layer.weight_count(), layer.outputs);
  dw.noalias() += dz.transpose() * x;
  db += dz.colwise().sum();
  if (!need_input_grad) return {};
  ConstMatrixMap w(params + layer.offset, layer.outputs, layer.inputs);
  Matrix dx(dz.rows(), layer.inputs);
  dx.noalias() = dz * w;
  return dx;
}

}  // namespace

const char* to_string(Architecture arch) { return arch == Architecture::kFcnn ? "fcnn" : "cnn"; }

Architecture architecture_from_string(const std::string& name) {
  if (name == "fcnn") return Architecture::kFcnn;
  if (name == "cnn") return Architecture::kCnn;
  throw std::invalid_argument("unknown architecture '" + name + "'");
}

void NetworkShape::validate() const {
  if (outputs < 1) throw std::invalid_argument("network needs at least one output");
  if (architecture == Architecture::kFcnn && hidden < 1) {
    throw std::invalid_argument("net.hidden must be positive");
  }
  if (architecture == Architecture::kCnn && (conv1 < 1 || conv2 < 1 || full < 1)) {
    throw std::invalid_argument("net.conv1, net.conv2 and net.full must be positive");
  }
}

std::vector<LayerDescriptor> layer_layout(const NetworkShape& shape) {
  shape.validate();
  std::vector<LayerDescriptor> layers;
  std::size_t offset = 0;
  auto add = [&](LayerKind kind, int in, int out) {
    layers.push_back({kind, in, out, offset});
    offset += layers.back().parameter_count();
  };
  if (shape.architecture == Architecture::kFcnn) {
    add(LayerKind::kDense, NetworkShape::kInputs, shape.hidden);
    add(LayerKind::kDense, shape.hidden, shape.hidden);
    add(LayerKind::kDense, shape.hidden, shape.outputs);
  } else {
    add(LayerKind::kObjectConv, NetworkShape::kObjectFeatures, shape.conv1);
    add(LayerKind::kObjectConv, shape.conv1, shape.conv2);
    add(LayerKind::kDense, shape.conv2 + NetworkShape::kEgoInputs, shape.full);
    add(LayerKind::kDense, shape.full, shape.outputs);
  }
  return layers;
}

std::size_t parameter_count(const NetworkShape& shape) {
  const auto layers = layer_layout(shape);
  return layers.back().offset + layers.back().parameter_count();
}

QNetwork::QNetwork(NetworkShape shape)
    : shape_(shape), layers_(layer_layout(shape)), params_(nn::parameter_count(shape), 0.0) {}

QNetwork QNetwork::initialized(NetworkShape shape, Rng& rng) {
  QNetwork net(shape);
  for (const auto& layer : net.layers_) {
    const double limit = std::sqrt(6.0 / (layer.inputs + layer.outputs));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (std::size_t i = 0; i < layer.weight_count(); ++i) {
      net.params_[layer.offset + i] = dist(rng);
    }
  }
  return net;
}

bool QNetwork::operator==(const QNetwork& other) const {
  return shape_ == other.shape_ && params_.size() == other.params_.size() &&
         std::memcmp(params_.data(), other.params_.data(), params_.size() * sizeof(double)) == 0;
}

void QNetwork::check_input(const Matrix& inputs) const {
  if (inputs.cols() != NetworkShape::kInputs) {
    throw std::invalid_argument("Q-network expects 27 inputs, got " + std::to_string(inputs.cols()));
  }
}

Matrix QNetwork::forward(const Matrix& inputs) const {
  check_input(inputs);
  return shape_.architecture == Architecture::kFcnn ? forward_fcnn(inputs, nullptr)
                                                     : forward_cnn(inputs, nullptr);
}

Matrix QNetwork::forward(const Matrix& inputs, Activations& cache) const {
  check_input(inputs);
  cache.input = inputs;
  return shape_.architecture == Architecture::kFcnn ? forward_fcnn(inputs, &cache)
                                                     : forward_cnn(inputs, &cache);
}

std::vector<double> QNetwork::forward(std::span<const double> observation) const {
  const Matrix q = forward(to_batch(observation));
  return std::vector<double>(q.data(), q.data() + q.size());
}

Matrix QNetwork::forward_fcnn(const Matrix& inputs, Activations* cache) const {
  const double* p = params_.data();
  Matrix h1 = affine(inputs, layers_[0], p);
  relu(h1);
  Matrix h2 = affine(h1, layers_[1], p);
  relu(h2);
  Matrix q = affine(h2, layers_[2], p);
  if (cache) {
    cache->hidden1 = std::move(h1);
    cache->hidden2 = std::move(h2);
  }
  return q;
}

Matrix QNetwork::forward_cnn(const Matrix& inputs, Activations* cache) const {
  constexpr int kRows = NetworkShape::kObjects;
  constexpr int kWidth = NetworkShape::kObjectFeatures;
  constexpr int kEgo = NetworkShape::kEgoInputs;
  const double* p = params_.data();
  const Eigen::Index batch = inputs.rows();

  Matrix objects(batch * kRows, kWidth);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int k = 0; k < kRows; ++k) {
      objects.row(b * kRows + k) = inputs.block(b, kEgo + kWidth * k, 1, kWidth);
    }
  }
  Matrix c1 = affine(objects, layers_[0], p);
  relu(c1);
  Matrix c2 = affine(c1, layers_[1], p);
  relu(c2);

  const int channels = shape_.conv2;
  Matrix features(batch, channels + kEgo);
  std::vector<int> argmax(static_cast<std::size_t>(batch) * channels);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int c = 0; c < channels; ++c) {
      int best = 0;
      double value = c2(b * kRows, c);
      for (int k = 1; k < kRows; ++k) {
        const double candidate = c2(b * kRows + k, c);
        if (candidate > value) {
          value = candidate;
          best = k;
        }
      }
      features(b, c) = value;
      argmax[b * channels + c] = best;
    }
    features.block(b, channels, 1, kEgo) = inputs.block(b, 0, 1, kEgo);
  }

  Matrix dense = affine(features, layers_[2], p);
  relu(dense);
  Matrix q = affine(dense, layers_[3], p);
  if (cache) {
    cache->objects = std::move(objects);
    cache->hidden1 = std::move(c1);
    cache->hidden2 = std::move(c2);
    cache->features = std::move(features);
    cache->dense = std::move(dense);
    cache->pool_argmax = std::move(argmax);
  }
  return q;
}

void QNetwork::backward(const Activations& cache, const Matrix& output_gradient,
                        GradientSet& grads) const {
  if (grads.values.size() != params_.size()) {
    throw std::invalid_argument("gradient set does not match the network shape");
  }
  if (output_gradient.rows() != cache.input.rows() || output_gradient.cols() != shape_.outputs) {
    throw std::invalid_argument("output gradient shape mismatch");
  }
  const double* p = params_.data();
  double* g = grads.values.data();

  if (shape_.architecture == Architecture::kFcnn) {
    Matrix dh2 = affine_backward(cache.hidden2, output_gradient, layers_[2], p, g, true);
    Matrix dz2 = relu_backward(dh2, cache.hidden2);
    Matrix dh1 = affine_backward(cache.hidden1, dz2, layers_[1], p, g, true);
    Matrix dz1 = relu_backward(dh1, cache.hidden1);
    affine_backward(cache.input, dz1, layers_[0], p, g, false);
    return;
  }

  constexpr int kRows = NetworkShape::kObjects;
  const int channels = shape_.conv2;
  const Eigen::Index batch = cache.input.rows();

  Matrix ddense = affine_backward(cache.dense, output_gradient, layers_[3], p, g, true);
  Matrix dz3 = relu_backward(ddense, cache.dense);
  Matrix dfeatures = affine_backward(cache.features, dz3, layers_[2], p, g, true);

  Matrix dc2 = Matrix::Zero(batch * kRows, channels);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int c = 0; c < channels; ++c) {
      dc2(b * kRows + cache.pool_argmax[b * channels + c], c) += dfeatures(b, c);
    }
  }
  Matrix dz2 = relu_backward(dc2, cache.hidden2);
  Matrix dc1 = affine_backward(cache.hidden1, dz2, layers_[1], p, g, true);
  Matrix dz1 = relu_backward(dc1, cache.hidden1);
  affine_backward(cache.objects, dz1, layers_[0], p, g, false);
}

GradientSet QNetwork::backward(std::span<const double> observation,
                               std::span<const double> output_gradient) const {
  if (static_cast<int>(output_gradient.size()) != shape_.outputs) {
    throw std::invalid_argument("output gradient length mismatch");
  }
  Activations cache;
  forward(to_batch(observation), cache);
  Matrix dq(1, shape_.outputs);
  for (int i = 0; i < shape_.outputs; ++i) dq(0, i) = output_gradient[i];
  GradientSet grads = zero_gradients();
  backward(cache, dq, grads);
  return grads;
}

Matrix to_batch(std::span<const double> observation) {
  Matrix m(1, static_cast<Eigen::Index>(observation.size()));
  for (std::size_t i = 0; i < observation.size(); ++i) m(0, static_cast<Eigen::Index>(i)) = observation[i];
  return m;
}

}  // namespace lanecraft::nn
