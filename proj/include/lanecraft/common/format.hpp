#pragma once

#include <string>

namespace lanecraft {

/// Locale-independent shortest-general rendering with 12 significant digits.
std::string format_number(double value);

}  // namespace lanecraft
