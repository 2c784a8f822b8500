#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace areavolt {

/// Splits one CSV record on commas. No quoting; a trailing '\r' is dropped.
std::vector<std::string_view> split_fields(std::string_view line);

/// Decimal (never exponent) notation with `significant` digits, at most
/// `max_decimals` digits after the point. Trailing zeros are kept so columns
/// stay a fixed width per magnitude. Non-finite values print as "nan"/"inf".
std::string format_decimal(double value, int significant = 6, int max_decimals = 10);

}  // namespace areavolt
