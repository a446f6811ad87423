#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acload::text
{

/// Splits one CSV record on commas. Quoting is not supported; none of the
/// input schemas carry commas inside fields.
std::vector<std::string_view> split_fields(std::string_view line);

/// Drops a trailing carriage return and surrounding blanks.
std::string_view trim(std::string_view s);

/// Parses the whole field as a finite decimal number; nullopt otherwise.
std::optional<double> parse_double(std::string_view field);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

} // namespace acload::text
