#pragma once

#include <string>

namespace increments {

/// 17 significant digits, '.' separator, no grouping. Round-trips doubles.
std::string format_number(double value);

} // namespace increments
