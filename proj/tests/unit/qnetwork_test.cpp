#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "../support/nn_oracles.hpp"
#include "lanecraft/nn/qnetwork.hpp"

using namespace lanecraft;
using namespace lanecraft::nn;

namespace {
NetworkShape shape(Architecture arch, int outputs) {
  NetworkShape s;
  s.architecture = arch;
  s.outputs = outputs;
  return s;
}

// Swaps vehicle blocks i and j of an observation.
std::vector<double> swap_blocks(std::vector<double> obs, int i, int j) {
  for (int k = 0; k < 3; ++k) std::swap(obs[3 + 3 * i + k], obs[3 + 3 * j + k]);
  return obs;
}
}  // namespace

TEST(QNetwork, ParameterCounts) {
  EXPECT_EQ(parameter_count(shape(Architecture::kFcnn, 3)),
            (27u * 512 + 512) + (512u * 512 + 512) + (512u * 3 + 3));
  EXPECT_EQ(parameter_count(shape(Architecture::kFcnn, 6)),
            (27u * 512 + 512) + (512u * 512 + 512) + (512u * 6 + 6));
  EXPECT_EQ(parameter_count(shape(Architecture::kCnn, 3)),
            (3u * 32 + 32) + (32u * 32 + 32) + (35u * 64 + 64) + (64u * 3 + 3));
  EXPECT_EQ(parameter_count(shape(Architecture::kCnn, 6)),
            (3u * 32 + 32) + (32u * 32 + 32) + (35u * 64 + 64) + (64u * 6 + 6));
}

TEST(QNetwork, ZeroNetworkOutputsZero) {
  QNetwork net(shape(Architecture::kCnn, 3));
  Rng rng(1);
  const auto q = net.forward(oracle::random_observation(rng));
  EXPECT_EQ(q, std::vector<double>(3, 0.0));
}

TEST(QNetwork, GlorotInitialization) {
  Rng rng(2);
  const auto net = QNetwork::initialized(shape(Architecture::kFcnn, 3), rng);
  for (const auto& layer : net.layers()) {
    const double limit = std::sqrt(6.0 / (layer.inputs + layer.outputs));
    double max_abs = 0;
    for (std::size_t i = 0; i < layer.weight_count(); ++i) {
      max_abs = std::max(max_abs, std::abs(net.parameters()[layer.offset + i]));
    }
    EXPECT_LE(max_abs, limit);
    EXPECT_GT(max_abs, 0.9 * limit);
    for (int o = 0; o < layer.outputs; ++o) {
      EXPECT_EQ(net.parameters()[layer.offset + layer.weight_count() + o], 0.0);
    }
  }
}

TEST(QNetwork, ForwardMatchesLoopOracle) {
  Rng rng(3);
  for (auto arch : {Architecture::kFcnn, Architecture::kCnn}) {
    for (int outputs : {3, 6}) {
      const auto net = oracle::random_network(shape(arch, outputs), rng);
      for (int trial = 0; trial < 20; ++trial) {
        const auto obs = oracle::random_observation(rng);
        const auto q = net.forward(obs);
        const auto expected = oracle::forward(net, obs);
        ASSERT_EQ(q.size(), static_cast<std::size_t>(outputs));
        for (int a = 0; a < outputs; ++a) EXPECT_NEAR(q[a], expected[a], 1e-12);
      }
    }
  }
}

TEST(QNetwork, BatchMatchesSingle) {
  Rng rng(4);
  for (auto arch : {Architecture::kFcnn, Architecture::kCnn}) {
    const auto net = oracle::random_network(shape(arch, 6), rng);
    Matrix batch(5, 27);
    std::vector<std::vector<double>> rows;
    for (int b = 0; b < 5; ++b) {
      rows.push_back(oracle::random_observation(rng));
      for (int j = 0; j < 27; ++j) batch(b, j) = rows.back()[j];
    }
    const Matrix q = net.forward(batch);
    for (int b = 0; b < 5; ++b) {
      const auto single = net.forward(rows[b]);
      for (int a = 0; a < 6; ++a) EXPECT_NEAR(q(b, a), single[a], 1e-13);
    }
  }
}

TEST(QNetwork, GradientsMatchFiniteDifferences) {
  Rng rng(5);
  for (auto arch : {Architecture::kFcnn, Architecture::kCnn}) {
    for (int outputs : {3, 6}) {
      int checked = 0;
      while (checked < 25) {
        const auto net = oracle::random_network(shape(arch, outputs), rng);
        const auto obs = oracle::random_observation(rng);
        std::vector<double> weights(outputs);
        for (double& w : weights) w = uniform(rng, -1, 1);
        const auto& layer = net.layers()[uniform_index(rng, static_cast<int>(net.layers().size()))];
        const std::size_t index = layer.offset + uniform_index(rng, static_cast<int>(layer.parameter_count()));
        oracle::GradientProbe probe;
        if (!oracle::probe_gradient(net, obs, weights, index, 1e-5, probe)) continue;
        EXPECT_LT(probe.relative_error, 1e-5) << to_string(arch) << " index " << index;
        ++checked;
      }
    }
  }
}

TEST(QNetwork, BackwardAccumulatesBatchRows) {
  Rng rng(6);
  const auto net = oracle::random_network(shape(Architecture::kCnn, 3), rng);
  const auto a = oracle::random_observation(rng);
  const auto b = oracle::random_observation(rng);
  const std::vector<double> ga{1, 0, -2}, gb{0.5, 1, 0};
  const auto grad_a = net.backward(a, ga);
  const auto grad_b = net.backward(b, gb);
  Matrix batch(2, 27), dq(2, 3);
  for (int j = 0; j < 27; ++j) {
    batch(0, j) = a[j];
    batch(1, j) = b[j];
  }
  for (int k = 0; k < 3; ++k) {
    dq(0, k) = ga[k];
    dq(1, k) = gb[k];
  }
  QNetwork::Activations cache;
  net.forward(batch, cache);
  auto total = net.zero_gradients();
  net.backward(cache, dq, total);
  for (std::size_t i = 0; i < total.values.size(); ++i) {
    EXPECT_NEAR(total.values[i], grad_a.values[i] + grad_b.values[i], 1e-12);
  }
}

TEST(QNetwork, ZeroOutputGradientGivesZeroGradient) {
  Rng rng(7);
  const auto net = oracle::random_network(shape(Architecture::kFcnn, 3), rng);
  const auto g = net.backward(oracle::random_observation(rng), std::vector<double>{0, 0, 0});
  EXPECT_TRUE(std::all_of(g.values.begin(), g.values.end(), [](double v) { return v == 0.0; }));
}

TEST(QNetwork, DeadReluBlocksGradient) {
  QNetwork net(shape(Architecture::kFcnn, 3));
  Rng rng(8);
  // First hidden layer has negative biases and zero weights: every unit is dead.
  const auto& l0 = net.layers()[0];
  for (int o = 0; o < l0.outputs; ++o) net.parameters()[l0.offset + l0.weight_count() + o] = -1.0;
  for (std::size_t i = net.layers()[1].offset; i < net.parameter_count(); ++i) {
    net.parameters()[i] = uniform(rng, -0.1, 0.1);
  }
  const auto g = net.backward(oracle::random_observation(rng), std::vector<double>{1, 1, 1});
  for (std::size_t i = 0; i < l0.parameter_count(); ++i) EXPECT_EQ(g.values[l0.offset + i], 0.0);
  // The output bias still receives the output gradient.
  const auto& head = net.layers()[2];
  EXPECT_EQ(g.values[head.offset + head.weight_count()], 1.0);
}

TEST(QNetwork, CnnIsInvariantToVehicleOrder) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = oracle::random_network(shape(Architecture::kCnn, 6), rng);
    const auto obs = oracle::random_observation(rng);
    const auto swapped = swap_blocks(obs, uniform_index(rng, 8), uniform_index(rng, 8));
    const auto q1 = net.forward(obs), q2 = net.forward(swapped);
    for (int a = 0; a < 6; ++a) EXPECT_NEAR(q1[a], q2[a], 1e-12);
  }
}

TEST(QNetwork, FcnnDependsOnVehicleOrder) {
  Rng rng(10);
  const auto net = oracle::random_network(shape(Architecture::kFcnn, 3), rng);
  const auto obs = oracle::random_observation(rng);
  const auto q1 = net.forward(obs), q2 = net.forward(swap_blocks(obs, 0, 5));
  double diff = 0;
  for (int a = 0; a < 3; ++a) diff = std::max(diff, std::abs(q1[a] - q2[a]));
  EXPECT_GT(diff, 1e-6);
}

TEST(QNetwork, ShapeValidationAndNames) {
  NetworkShape bad = shape(Architecture::kCnn, 0);
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_EQ(architecture_from_string("cnn"), Architecture::kCnn);
  EXPECT_EQ(architecture_from_string("fcnn"), Architecture::kFcnn);
  EXPECT_THROW(architecture_from_string("rnn"), std::invalid_argument);
  QNetwork net(shape(Architecture::kCnn, 3));
  EXPECT_THROW(net.forward(std::vector<double>(26, 0.0)), std::invalid_argument);
}
