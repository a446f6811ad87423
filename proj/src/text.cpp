#include "acload/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace acload::text
{

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s)
{
    constexpr std::string_view blanks = " \t\r\n";
    const auto first = s.find_first_not_of(blanks);
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(blanks);
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view field)
{
    field = trim(field);
    if (field.empty())
        return std::nullopt;
    // from_chars rejects a leading '+'; accept it for hand-written files.
    if (field.front() == '+')
        field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::string format_double(double v)
{
    if (v == 0.0)
        return "0"; // folds -0
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace acload::text
