#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lanecraft/nn/qnetwork.hpp"

namespace lanecraft::nn {

/// Checkpoint layout (all integers little-endian):
///   "LQNW" | u32 version | u32 architecture | u32 layer count |
///   per layer: u32 kind, u32 inputs, u32 outputs |
///   u64 parameter count | parameters as f64, layer order.
inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { kIo, kCorrupt, kVersion, kShapeMismatch };
  CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string serialize_weights(const QNetwork& net);
QNetwork deserialize_weights(std::string_view bytes);

void save_weights(const QNetwork& net, const std::filesystem::path& path);
QNetwork load_weights(const std::filesystem::path& path);
/// Also rejects checkpoints whose shape differs from `expected`.
QNetwork load_weights(const std::filesystem::path& path, const NetworkShape& expected);

}  // namespace lanecraft::nn
