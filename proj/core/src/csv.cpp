#include "areavolt/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace areavolt {

std::vector<std::string_view> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string format_decimal(double value, int significant, int max_decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  int decimals = max_decimals;
  if (value != 0.0) {
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
    decimals = std::clamp(significant - 1 - exponent, 0, max_decimals);
  } else {
    decimals = std::min(significant - 1, max_decimals);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  // "-0.000" reads as a sign error in a table; print it unsigned.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

}  // namespace areavolt
