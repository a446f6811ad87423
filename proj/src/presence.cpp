#include "acload/presence.hpp"

#include "acload/text.hpp"

#include <istream>
#include <ostream>

namespace acload
{

namespace
{

struct Band
{
    std::size_t first;
    std::size_t last;
    double value;
};

std::array<double, kHoursPerDay> expand(std::initializer_list<Band> bands)
{
    std::array<double, kHoursPerDay> row{};
    for (const auto& b : bands)
        for (std::size_t h = b.first; h <= b.last; ++h)
            row[h] = b.value;
    return row;
}

std::string expected_header()
{
    std::string header = "group";
    for (std::size_t h = 0; h < kHoursPerDay; ++h)
        header += ",h" + std::to_string(h);
    return header;
}

} // namespace

PresenceError::PresenceError(Kind kind, std::string message, std::size_t line,
                             std::optional<std::size_t> hour)
    : std::runtime_error(std::move(message)), kind_(kind), line_(line), hour_(hour)
{
}

std::string_view PresenceError::kind_name() const
{
    switch (kind_) {
    case Kind::MissingGroup: return "MissingGroup";
    case Kind::MissingHour: return "MissingHour";
    case Kind::ValueOutOfRange: return "ValueOutOfRange";
    case Kind::Malformed: return "Malformed";
    }
    return "Unknown";
}

PresenceProfile default_profiles()
{
    PresenceProfile p;
    p.entries[index(DemographicGroup::Retired)] =
        expand({{0, 6, 0.95}, {7, 21, 0.90}, {22, 23, 0.95}});
    p.entries[index(DemographicGroup::Families)] =
        expand({{0, 6, 0.95}, {7, 8, 0.60}, {9, 14, 0.45}, {15, 16, 0.75}, {17, 23, 0.90}});
    p.entries[index(DemographicGroup::CouplesWithoutChildren)] =
        expand({{0, 6, 0.95}, {7, 8, 0.50}, {9, 16, 0.30}, {17, 17, 0.60}, {18, 23, 0.85}});
    p.entries[index(DemographicGroup::Singles)] =
        expand({{0, 6, 0.95}, {7, 8, 0.45}, {9, 17, 0.25}, {18, 18, 0.55}, {19, 23, 0.80}});
    p.entries[index(DemographicGroup::SharedFlats)] =
        expand({{0, 6, 0.90}, {7, 8, 0.60}, {9, 17, 0.50}, {18, 23, 0.75}});
    return p;
}

PresenceProfile load_profiles(std::istream& in)
{
    using Kind = PresenceError::Kind;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw PresenceError(Kind::Malformed, "presence file is empty");
    ++line_no;

    const auto header = text::split_fields(line);
    if (header.empty() || header[0] != "group")
        throw PresenceError(Kind::Malformed, "presence header must start with 'group'", 1);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        if (h + 1 >= header.size() || header[h + 1] != "h" + std::to_string(h))
            throw PresenceError(Kind::MissingHour,
                                "presence header lacks column h" + std::to_string(h), 1, h);
    }
    if (header.size() != kHoursPerDay + 1)
        throw PresenceError(Kind::Malformed, "presence header must be: " + expected_header(), 1);

    PresenceProfile p;
    std::array<bool, kGroupCount> seen{};
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty())
            continue;
        const auto fields = text::split_fields(line);
        const auto group = parse_group(fields[0]);
        if (!group)
            throw PresenceError(Kind::Malformed,
                                "unknown group '" + std::string(fields[0]) + "' on line "
                                    + std::to_string(line_no),
                                line_no);
        if (seen[index(*group)])
            throw PresenceError(Kind::Malformed,
                                "group " + std::string(fields[0]) + " repeated on line "
                                    + std::to_string(line_no),
                                line_no);
        seen[index(*group)] = true;

        if (fields.size() < kHoursPerDay + 1)
            throw PresenceError(Kind::MissingHour,
                                "line " + std::to_string(line_no) + " has no value for h"
                                    + std::to_string(fields.size() - 1),
                                line_no, fields.size() - 1);
        if (fields.size() > kHoursPerDay + 1)
            throw PresenceError(Kind::Malformed,
                                "line " + std::to_string(line_no) + " has more than 24 hours",
                                line_no);

        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            const auto v = text::parse_double(fields[h + 1]);
            if (!v)
                throw PresenceError(Kind::Malformed,
                                    "line " + std::to_string(line_no) + ", h" + std::to_string(h)
                                        + ": not a number",
                                    line_no, h);
            if (*v < 0.0 || *v > 1.0)
                throw PresenceError(Kind::ValueOutOfRange,
                                    "line " + std::to_string(line_no) + ", h" + std::to_string(h)
                                        + ": " + std::string(fields[h + 1])
                                        + " is outside [0, 1]",
                                    line_no, h);
            p.entries[index(*group)][h] = *v;
        }
    }

    for (auto g : kAllGroups)
        if (!seen[index(g)])
            throw PresenceError(Kind::MissingGroup,
                                "presence file has no row for " + std::string(group_name(g)));
    return p;
}

void write_profiles(std::ostream& out, const PresenceProfile& p)
{
    out << expected_header() << '\n';
    for (auto g : kAllGroups) {
        out << group_name(g);
        for (double v : p.entries[index(g)])
            out << ',' << text::format_double(v);
        out << '\n';
    }
}

double presence(const PresenceProfile& p, DemographicGroup g, std::size_t hour)
{
    if (hour >= kHoursPerDay)
        throw std::out_of_range("hour " + std::to_string(hour) + " outside [0, 23]");
    return p.entries[index(g)][hour];
}

} // namespace acload
