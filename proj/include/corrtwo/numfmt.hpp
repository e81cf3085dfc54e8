#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace corrtwo {

/// Shortest decimal text that parses back to exactly `value` (at most 17
/// significant digits).
std::string format_roundtrip(double value);

/// Fixed-point text with exactly six decimals; negative zero prints as zero.
std::string format_fixed6(double value);

/// Parses a complete decimal or scientific literal. Leading and trailing
/// blanks are ignored; anything else, including non-finite values, fails.
std::optional<double> parse_real(std::string_view text);

}  // namespace corrtwo
