#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wearlab {

// Fixed-decimal rendering, e.g. fixed(1.4723, 1) -> "1.5".
std::string format_fixed(double value, int decimals);

// Nearest-integer rendering, e.g. format_int(234.9) -> "235".
std::string format_int(double value);

// Shortest decimal form that keeps at least one fractional digit:
// 0.85 -> "0.85", 6850 -> "6850.0", -274 -> "-274.0". Matches the way raw
// sensor values appear in the source prompt tables.
std::string format_number(double value);

// "65th", "92nd", "73rd", "11th", ...
std::string ordinal(long n);

// Missing numeric cells print as "NaN" in tabular renderings.
std::string format_optional(const std::optional<double>& value, int decimals);

// Left-aligned plain-text table: columns padded to their widest cell and
// separated by two spaces. Rows must all have header.size() cells.
std::string render_aligned_table(const std::vector<std::string>& header,
                                 const std::vector<std::vector<std::string>>& rows);

// Splits on '\n' (no trailing empty element for a trailing newline).
std::vector<std::string> split_lines(const std::string& text);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

std::string to_lower(std::string s);

}  // namespace wearlab
