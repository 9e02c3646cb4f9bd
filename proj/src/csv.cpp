#include "increments/csv.hpp"

#include <cstdio>

namespace increments {

std::string format_number(double value) {
  char buffer[32];
  const int len = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(len));
}

} // namespace increments
