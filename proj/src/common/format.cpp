#include "lanecraft/common/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace lanecraft {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), end);
}

}  // namespace lanecraft
