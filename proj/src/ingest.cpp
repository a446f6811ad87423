#include "acload/ingest.hpp"

#include "acload/text.hpp"

#include <toml.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace acload
{

using namespace std::chrono;

namespace
{

using Kind = IngestError::Kind;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

template <typename Int>
std::optional<Int> parse_int(std::string_view s)
{
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

void expect_header(std::istream& in, std::string_view expected, std::string_view what)
{
    std::string line;
    if (!std::getline(in, line))
        throw IngestError(Kind::MalformedHeader, std::string(what) + " file is empty");
    if (text::trim(line) != expected)
        throw IngestError(Kind::MalformedHeader, std::string(what) + " header must be '"
                                                     + std::string(expected) + "', got '"
                                                     + std::string(text::trim(line)) + "'");
}

GeoPoint parse_point(std::string_view lat_s, std::string_view lon_s, std::size_t line)
{
    const auto lat = text::parse_double(lat_s);
    const auto lon = text::parse_double(lon_s);
    if (!lat || !lon)
        throw IngestError(Kind::MalformedRow, at_line(line) + "latitude/longitude is not a number");
    if (!GeoPoint::valid(*lat, *lon))
        throw IngestError(Kind::InvalidCoordinate,
                          at_line(line) + "coordinate (" + std::string(lat_s) + ", "
                              + std::string(lon_s) + ") out of range");
    return GeoPoint(*lat, *lon);
}

std::string join_hours(const std::vector<std::size_t>& hours)
{
    std::string out;
    for (std::size_t h : hours) {
        if (!out.empty())
            out += ",";
        out += std::to_string(h);
    }
    return out;
}

sys_seconds local_day_start_utc(year_month_day date, int utc_offset_hours)
{
    return sys_seconds{sys_days{date}} - hours{utc_offset_hours};
}

// Config helpers -----------------------------------------------------------

[[noreturn]] void invalid(const std::string& path, const std::string& reason)
{
    throw IngestError(Kind::InvalidValue, "InvalidValue at '" + path + "': " + reason);
}

void reject_unknown(const toml::table& table, const std::string& prefix,
                    const std::set<std::string, std::less<>>& allowed)
{
    for (const auto& [key, node] : table) {
        if (!allowed.contains(key.str()))
            throw IngestError(Kind::UnknownKey, "UnknownKey: '" + prefix + std::string(key.str()) + "'");
    }
}

std::optional<double> number_at(const toml::table& table, std::string_view key,
                                const std::string& path)
{
    const toml::node* node = table.get(key);
    if (!node)
        return std::nullopt;
    if (const auto v = node->value_exact<double>())
        return *v;
    if (const auto v = node->value_exact<int64_t>())
        return static_cast<double>(*v);
    invalid(path, "expected a number");
}

const toml::table* table_at(const toml::table& table, std::string_view key, const std::string& path)
{
    const toml::node* node = table.get(key);
    if (!node)
        return nullptr;
    if (!node->is_table())
        invalid(path, "expected a table");
    return node->as_table();
}

template <typename Fn>
void checked(const std::string& path, Fn&& fn)
{
    try {
        fn();
    }
    catch (const std::invalid_argument& e) {
        invalid(path, e.what());
    }
}

constexpr std::string_view kCensusHeader = "grid_id,lat,lon,hh_1,hh_2,hh_3,hh_4,hh_5,hh_6p";
constexpr std::string_view kWeatherHeader = "station_id,lat,lon,timestamp_utc,temp_c";
constexpr std::array<std::string_view, kHouseholdSizes> kMatrixRows = {"hh_1", "hh_2", "hh_3",
                                                                       "hh_4", "hh_5", "hh_6p"};

} // namespace

std::string_view IngestError::kind_name() const
{
    switch (kind_) {
    case Kind::MalformedHeader: return "MalformedHeader";
    case Kind::MalformedRow: return "MalformedRow";
    case Kind::DuplicateGridId: return "DuplicateGridId";
    case Kind::InvalidCoordinate: return "InvalidCoordinate";
    case Kind::MissingHours: return "MissingHours";
    case Kind::MalformedTimestamp: return "MalformedTimestamp";
    case Kind::DuplicateReading: return "DuplicateReading";
    case Kind::UnknownKey: return "UnknownKey";
    case Kind::InvalidValue: return "InvalidValue";
    }
    return "Unknown";
}

std::vector<GridCell> load_census(std::istream& in)
{
    expect_header(in, kCensusHeader, "census");

    std::vector<GridCell> cells;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty())
            continue;
        const auto f = text::split_fields(line);
        if (f.size() != 3 + kHouseholdSizes)
            throw IngestError(Kind::MalformedRow, at_line(line_no) + "expected 9 fields, got "
                                                      + std::to_string(f.size()));
        if (f[0].empty())
            throw IngestError(Kind::MalformedRow, at_line(line_no) + "empty grid_id");

        GridCell cell{std::string(f[0]), parse_point(f[1], f[2], line_no), {}};
        for (std::size_t s = 0; s < kHouseholdSizes; ++s) {
            const auto field = f[3 + s];
            if (field.empty() || field == "-1")
                continue;
            const auto v = text::parse_double(field);
            if (!v || *v < 0.0)
                throw IngestError(Kind::MalformedRow, at_line(line_no) + "hh_" + std::string(size_label(s))
                                                          + " = '" + std::string(field)
                                                          + "' is not a non-negative count");
            cell.households_by_size[s] = *v;
        }
        cells.push_back(std::move(cell));
    }

    std::sort(cells.begin(), cells.end(),
              [](const GridCell& a, const GridCell& b) { return a.id < b.id; });
    const auto dup = std::adjacent_find(cells.begin(), cells.end(),
                                        [](const auto& a, const auto& b) { return a.id == b.id; });
    if (dup != cells.end())
        throw IngestError(Kind::DuplicateGridId, "DuplicateGridId: '" + dup->id + "'");
    return cells;
}

void write_census(std::ostream& out, std::span<const GridCell> cells)
{
    out << kCensusHeader << '\n';
    for (const auto& c : cells) {
        out << c.id << ',' << text::format_double(c.centroid.lat()) << ','
            << text::format_double(c.centroid.lon());
        for (double v : c.households_by_size)
            out << ',' << text::format_double(v);
        out << '\n';
    }
}

WeatherData load_weather(std::istream& in, year_month_day date, int utc_offset_hours)
{
    if (!date.ok())
        throw IngestError(Kind::InvalidValue, "invalid simulation date");
    expect_header(in, kWeatherHeader, "weather");

    struct Partial
    {
        GeoPoint location;
        std::array<std::optional<double>, kHoursPerDay> temps;
    };
    std::map<std::string, Partial, std::less<>> stations;

    const sys_seconds start = local_day_start_utc(date, utc_offset_hours);
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty())
            continue;
        const auto f = text::split_fields(line);
        if (f.size() != 5)
            throw IngestError(Kind::MalformedRow, at_line(line_no) + "expected 5 fields, got "
                                                      + std::to_string(f.size()));
        if (f[0].empty())
            throw IngestError(Kind::MalformedRow, at_line(line_no) + "empty station_id");

        const GeoPoint location = parse_point(f[1], f[2], line_no);
        const auto ts = parse_utc_timestamp(f[3]);
        if (!ts)
            throw IngestError(Kind::MalformedTimestamp, "MalformedTimestamp: " + at_line(line_no) + "'"
                                                            + std::string(f[3]) + "'");
        if (ts->time_since_epoch() % hours{1} != seconds{0})
            throw IngestError(Kind::MalformedTimestamp, "MalformedTimestamp: " + at_line(line_no) + "'"
                                                            + std::string(f[3])
                                                            + "' is not on the hour");
        const auto temp = text::parse_double(f[4]);
        if (!temp)
            throw IngestError(Kind::MalformedRow, at_line(line_no) + "temp_c '" + std::string(f[4])
                                                      + "' is not a number");

        auto [it, inserted] = stations.try_emplace(std::string(f[0]), Partial{location, {}});
        if (!inserted && !(it->second.location == location))
            throw IngestError(Kind::MalformedRow, at_line(line_no) + "station '" + it->first
                                                      + "' changes location");

        const auto offset = duration_cast<hours>(*ts - start).count();
        if (offset < 0 || offset >= static_cast<long>(kHoursPerDay))
            continue;
        auto& slot = it->second.temps[static_cast<std::size_t>(offset)];
        if (slot)
            throw IngestError(Kind::DuplicateReading, "DuplicateReading: station '" + it->first
                                                          + "', hour " + std::to_string(offset));
        slot = *temp;
    }

    WeatherData out;
    for (auto& [id, partial] : stations) {
        std::vector<std::size_t> missing;
        for (std::size_t h = 0; h < kHoursPerDay; ++h)
            if (!partial.temps[h])
                missing.push_back(h);

        bool fillable = true;
        for (std::size_t i = 0; i < missing.size(); ++i) {
            const std::size_t h = missing[i];
            if (h == 0 || h + 1 == kHoursPerDay || (i > 0 && missing[i - 1] + 1 == h))
                fillable = false;
        }
        if (!fillable)
            throw IngestError(Kind::MissingHours, "MissingHours: station '" + id + "', hours "
                                                      + join_hours(missing));

        TemperatureSeries series{id, {}};
        for (std::size_t h = 0; h < kHoursPerDay; ++h)
            series.temps_c[h] = partial.temps[h]
                ? *partial.temps[h]
                : 0.5 * (*partial.temps[h - 1] + *partial.temps[h + 1]);
        out.stations.push_back({id, partial.location});
        out.series.push_back(std::move(series));
    }
    return out;
}

void write_weather(std::ostream& out, const WeatherData& data, year_month_day date,
                   int utc_offset_hours)
{
    const sys_seconds start = local_day_start_utc(date, utc_offset_hours);
    out << kWeatherHeader << '\n';
    for (std::size_t i = 0; i < data.stations.size(); ++i) {
        const auto& st = data.stations[i];
        const std::string prefix = st.id + ',' + text::format_double(st.location.lat()) + ','
            + text::format_double(st.location.lon()) + ',';
        for (std::size_t h = 0; h < kHoursPerDay; ++h)
            out << prefix << format_utc_timestamp(start + hours{h}) << ','
                << text::format_double(data.series[i].temps_c[h]) << '\n';
    }
}

RunConfig load_config(std::istream& in)
{
    toml::table doc;
    try {
        doc = toml::parse(in);
    }
    catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << e.description() << " (line " << e.source().begin.line << ")";
        invalid("<document>", os.str());
    }

    reject_unknown(doc, "", {"date", "utc_offset_hours", "baseline_gw", "presence_file",
                             "scenario", "activation", "matrix"});

    RunConfig cfg;

    if (const toml::node* node = doc.get("date")) {
        if (const auto d = node->value_exact<toml::date>()) {
            cfg.date = year{d->year} / month{d->month} / day{d->day};
        }
        else if (const auto s = node->value_exact<std::string>()) {
            const auto parsed = parse_date(*s);
            if (!parsed)
                invalid("date", "expected YYYY-MM-DD, got '" + *s + "'");
            cfg.date = *parsed;
        }
        else {
            invalid("date", "expected a date");
        }
        if (!cfg.date.ok())
            invalid("date", "not a calendar date");
    }

    if (const toml::node* node = doc.get("utc_offset_hours")) {
        const auto v = node->value_exact<int64_t>();
        if (!v)
            invalid("utc_offset_hours", "expected a whole number of hours");
        if (*v < -12 || *v > 14)
            invalid("utc_offset_hours", "must lie in [-12, 14], got " + std::to_string(*v));
        cfg.utc_offset_hours = static_cast<int>(*v);
    }

    if (const auto v = number_at(doc, "baseline_gw", "baseline_gw")) {
        if (!(*v > 0.0))
            invalid("baseline_gw", "must be > 0");
        cfg.baseline_gw = *v;
    }

    if (const toml::node* node = doc.get("presence_file")) {
        const auto s = node->value_exact<std::string>();
        if (!s || s->empty())
            invalid("presence_file", "expected a non-empty path string");
        cfg.presence_path = std::filesystem::path(*s);
    }

    if (const auto* scen = table_at(doc, "scenario", "scenario")) {
        reject_unknown(*scen, "scenario.", {"p_max_kw", "eta", "dt_hours"});
        if (const auto v = number_at(*scen, "p_max_kw", "scenario.p_max_kw"))
            cfg.scenario.p_max_kw = *v;
        if (const auto v = number_at(*scen, "eta", "scenario.eta"))
            cfg.scenario.eta = *v;
        if (const auto v = number_at(*scen, "dt_hours", "scenario.dt_hours"))
            cfg.scenario.dt_hours = *v;
    }
    checked("scenario", [&] { cfg.scenario.validate(); });

    if (const auto* act = table_at(doc, "activation", "activation")) {
        reject_unknown(*act, "activation.", {"u", "l", "k", "dt", "tau_c"});
        if (const auto v = number_at(*act, "u", "activation.u"))
            cfg.activation.threshold_c = *v;
        if (const auto v = number_at(*act, "l", "activation.l"))
            cfg.activation.scale_c = *v;
        if (const auto v = number_at(*act, "k", "activation.k"))
            cfg.activation.shape = *v;
        if (const auto v = number_at(*act, "dt", "activation.dt"))
            cfg.activation.dt_hours = *v;
        if (const auto v = number_at(*act, "tau_c", "activation.tau_c"))
            cfg.activation.tau_c_hours = *v;
    }
    checked("activation", [&] { cfg.activation.validate(); });

    if (const auto* mat = table_at(doc, "matrix", "matrix")) {
        reject_unknown(*mat, "matrix.", {kMatrixRows.begin(), kMatrixRows.end()});
        DistributionMatrix m;
        for (std::size_t s = 0; s < kHouseholdSizes; ++s) {
            const std::string row_path = "matrix." + std::string(kMatrixRows[s]);
            const auto* row = table_at(*mat, kMatrixRows[s], row_path);
            if (!row)
                invalid(row_path, "matrix override must define all six household-size rows");
            std::set<std::string, std::less<>> columns;
            for (auto g : kAllGroups)
                columns.emplace(group_name(g));
            reject_unknown(*row, row_path + ".", columns);
            for (auto g : kAllGroups) {
                const std::string name(group_name(g));
                m.entries[s][index(g)] = number_at(*row, name, row_path + "." + name).value_or(0.0);
            }
        }
        const auto issues = validate_matrix(m);
        if (!issues.empty())
            invalid("matrix." + std::string(kMatrixRows[issues.front().size_index]),
                    issues.front().message());
        cfg.matrix = m;
    }

    return cfg;
}

std::optional<sys_seconds> parse_utc_timestamp(std::string_view s)
{
    s = text::trim(s);
    if (s.ends_with('Z'))
        s.remove_suffix(1);
    else if (s.ends_with("+00:00"))
        s.remove_suffix(6);

    // YYYY-MM-DDTHH:MM or YYYY-MM-DDTHH:MM:SS
    if (s.size() != 16 && s.size() != 19)
        return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':'
        || (s.size() == 19 && s[16] != ':'))
        return std::nullopt;

    const auto y = parse_int<int>(s.substr(0, 4));
    const auto mo = parse_int<unsigned>(s.substr(5, 2));
    const auto d = parse_int<unsigned>(s.substr(8, 2));
    const auto hh = parse_int<int>(s.substr(11, 2));
    const auto mm = parse_int<int>(s.substr(14, 2));
    const auto ss = s.size() == 19 ? parse_int<int>(s.substr(17, 2)) : std::optional<int>(0);
    if (!y || !mo || !d || !hh || !mm || !ss)
        return std::nullopt;
    const year_month_day ymd{year{*y}, month{*mo}, day{*d}};
    if (!ymd.ok() || *hh > 23 || *mm > 59 || *ss > 59)
        return std::nullopt;
    return sys_seconds{sys_days{ymd}} + hours{*hh} + minutes{*mm} + seconds{*ss};
}

std::string format_utc_timestamp(sys_seconds t)
{
    const auto day_start = floor<days>(t);
    const year_month_day ymd{day_start};
    const hh_mm_ss tod{t - day_start};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

std::optional<year_month_day> parse_date(std::string_view s)
{
    s = text::trim(s);
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        return std::nullopt;
    const auto y = parse_int<int>(s.substr(0, 4));
    const auto mo = parse_int<unsigned>(s.substr(5, 2));
    const auto d = parse_int<unsigned>(s.substr(8, 2));
    if (!y || !mo || !d)
        return std::nullopt;
    const year_month_day ymd{year{*y}, month{*mo}, day{*d}};
    if (!ymd.ok())
        return std::nullopt;
    return ymd;
}

std::string format_date(year_month_day d)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

} // namespace acload
