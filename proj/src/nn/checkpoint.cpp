#include "lanecraft/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lanecraft::nn {

namespace {

constexpr char kMagic[4] = {'L', 'Q', 'N', 'W'};

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get_le() {
    need(sizeof(T));
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(value);
  }

  std::string_view take(std::size_t n) {
    need(n);
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw CheckpointError(CheckpointError::Kind::kCorrupt, "checkpoint is truncated");
    }
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

NetworkShape shape_from_table(Architecture arch, const std::vector<LayerDescriptor>& table) {
  NetworkShape shape;
  shape.architecture = arch;
  auto corrupt = [] {
    return CheckpointError(CheckpointError::Kind::kCorrupt, "checkpoint layer table is inconsistent");
  };
  if (arch == Architecture::kFcnn) {
    if (table.size() != 3) throw corrupt();
    shape.hidden = table[0].outputs;
    shape.outputs = table[2].outputs;
  } else {
    if (table.size() != 4) throw corrupt();
    shape.conv1 = table[0].outputs;
    shape.conv2 = table[1].outputs;
    shape.full = table[2].outputs;
    shape.outputs = table[3].outputs;
  }
  try {
    const auto expected = layer_layout(shape);
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (expected[i].kind != table[i].kind || expected[i].inputs != table[i].inputs ||
          expected[i].outputs != table[i].outputs) {
        throw corrupt();
      }
    }
  } catch (const std::invalid_argument&) {
    throw corrupt();
  }
  return shape;
}

}  // namespace

std::string serialize_weights(const QNetwork& net) {
  std::string out(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(net.shape().architecture));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(net.layers().size()));
  for (const auto& layer : net.layers()) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(layer.kind));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(layer.inputs));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(layer.outputs));
  }
  put_le<std::uint64_t>(out, net.parameter_count());
  for (double value : net.parameters()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(value));
  return out;
}

QNetwork deserialize_weights(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw CheckpointError(CheckpointError::Kind::kCorrupt, "not a Q-network checkpoint (bad magic)");
  }
  const auto version = in.get_le<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::kVersion,
                          "unsupported checkpoint version " + std::to_string(version));
  }
  const auto arch_tag = in.get_le<std::uint32_t>();
  if (arch_tag > static_cast<std::uint32_t>(Architecture::kCnn)) {
    throw CheckpointError(CheckpointError::Kind::kCorrupt, "unknown architecture tag");
  }
  const auto layer_count = in.get_le<std::uint32_t>();
  if (layer_count > 16) throw CheckpointError(CheckpointError::Kind::kCorrupt, "implausible layer count");
  std::vector<LayerDescriptor> table;
  for (std::uint32_t i = 0; i < layer_count; ++i) {
    const auto kind = in.get_le<std::uint32_t>();
    const auto inputs = in.get_le<std::uint32_t>();
    const auto outputs = in.get_le<std::uint32_t>();
    if (kind > 1 || inputs == 0 || outputs == 0 || inputs > (1u << 20) || outputs > (1u << 20)) {
      throw CheckpointError(CheckpointError::Kind::kCorrupt, "invalid layer descriptor");
    }
    table.push_back({static_cast<LayerKind>(kind), static_cast<int>(inputs),
                     static_cast<int>(outputs), 0});
  }
  QNetwork net(shape_from_table(static_cast<Architecture>(arch_tag), table));
  const auto count = in.get_le<std::uint64_t>();
  if (count != net.parameter_count()) {
    throw CheckpointError(CheckpointError::Kind::kCorrupt, "parameter count does not match layers");
  }
  for (double& value : net.parameters()) value = std::bit_cast<double>(in.get_le<std::uint64_t>());
  if (!in.at_end()) throw CheckpointError(CheckpointError::Kind::kCorrupt, "trailing bytes in checkpoint");
  return net;
}

void save_weights(const QNetwork& net, const std::filesystem::path& path) {
  const std::string bytes = serialize_weights(net);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(CheckpointError::Kind::kIo, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError(CheckpointError::Kind::kIo, "failed writing " + path.string());
}

QNetwork load_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(CheckpointError::Kind::kIo, "cannot open checkpoint " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_weights(buffer.str());
}

QNetwork load_weights(const std::filesystem::path& path, const NetworkShape& expected) {
  QNetwork net = load_weights(path);
  NetworkShape got = net.shape();
  NetworkShape want = expected;
  // Fields that do not apply to an architecture carry no meaning.
  if (want.architecture == Architecture::kFcnn) {
    want.conv1 = got.conv1;
    want.conv2 = got.conv2;
    want.full = got.full;
  } else {
    want.hidden = got.hidden;
  }
  if (!(got == want)) {
    throw CheckpointError(CheckpointError::Kind::kShapeMismatch,
                          "checkpoint " + path.string() + " holds a " + to_string(got.architecture) +
                              " network with " + std::to_string(got.outputs) +
                              " outputs, expected " + to_string(expected.architecture) + " with " +
                              std::to_string(expected.outputs));
  }
  return net;
}

}  // namespace lanecraft::nn
