#include "acload/ingest.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

namespace acload
{
namespace
{

using namespace std::chrono;
using Kind = IngestError::Kind;

constexpr const char* kCensusHeader = "grid_id,lat,lon,hh_1,hh_2,hh_3,hh_4,hh_5,hh_6p\n";
constexpr const char* kWeatherHeader = "station_id,lat,lon,timestamp_utc,temp_c\n";
const year_month_day kDay{year{2025}, July, day{2}};

std::vector<GridCell> census(const std::string& body)
{
    std::istringstream in(kCensusHeader + body);
    return load_census(in);
}

template <typename Fn>
Kind error_of(Fn&& fn)
{
    try {
        fn();
    }
    catch (const IngestError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected IngestError";
    return Kind::InvalidValue;
}

Kind census_error(const std::string& body)
{
    return error_of([&] { census(body); });
}

// Builds a weather file for one station at 52,13, local day 2025-07-02,
// UTC+2, with temperature 20 + h for every hour not in `skip`.
std::string station_rows(const std::string& id, std::vector<int> skip = {})
{
    std::string rows;
    for (int h = 0; h < 24; ++h) {
        if (std::find(skip.begin(), skip.end(), h) != skip.end())
            continue;
        const int utc = h - 2;
        const int d = utc < 0 ? 1 : 2;
        const int hh = (utc + 24) % 24;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s,52,13,2025-07-%02dT%02d:00:00Z,%d.0\n", id.c_str(), d, hh,
                      20 + h);
        rows += buf;
    }
    return rows;
}

WeatherData weather(const std::string& body, int offset = 2)
{
    std::istringstream in(kWeatherHeader + body);
    return load_weather(in, kDay, offset);
}

RunConfig config(const std::string& toml)
{
    std::istringstream in(toml);
    return load_config(in);
}

TEST(LoadCensus, ParsesRow)
{
    const auto cells = census("cell_a,52.5,13.4,10,5,2,1,0,0\n");
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].id, "cell_a");
    EXPECT_EQ(cells[0].centroid, GeoPoint(52.5, 13.4));
    EXPECT_EQ(cells[0].households_by_size, (HouseholdCounts{10, 5, 2, 1, 0, 0}));
}

TEST(LoadCensus, MaskedCountsReadAsZero)
{
    const auto cells = census("m,52.5,13.4,10,5,-1,1,,3\r\n");
    EXPECT_EQ(cells[0].households_by_size, (HouseholdCounts{10, 5, 0, 1, 0, 3}));
}

TEST(LoadCensus, Errors)
{
    EXPECT_EQ(census_error("a,52,13,1,1,1,1,1,1\na,53,13,1,1,1,1,1,1\n"), Kind::DuplicateGridId);
    EXPECT_EQ(census_error("a,52,13,1,1,1,1,1\n"), Kind::MalformedRow);
    EXPECT_EQ(census_error("a,52,13,1,1,x,1,1,1\n"), Kind::MalformedRow);
    EXPECT_EQ(census_error("a,52,13,1,1,-2,1,1,1\n"), Kind::MalformedRow);
    EXPECT_EQ(census_error("a,x,13,1,1,1,1,1,1\n"), Kind::MalformedRow);
    EXPECT_EQ(census_error("a,95,13,1,1,1,1,1,1\n"), Kind::InvalidCoordinate);
    EXPECT_EQ(census_error(",52,13,1,1,1,1,1,1\n"), Kind::MalformedRow);
    EXPECT_EQ(error_of([] {
                  std::istringstream in("id,lat,lon\n");
                  load_census(in);
              }),
              Kind::MalformedHeader);
}

TEST(LoadCensus, ErrorNamesLine)
{
    try {
        census("a,52,13,1,1,1,1,1,1\nb,52,13,1,1,1,1\n");
        FAIL();
    }
    catch (const IngestError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(LoadCensus, PropertyRoundTripAndOrderIndependence)
{
    testing::Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        auto cells = testing::random_cells(rng, 300);
        std::uniform_real_distribution<double> frac(0, 3);
        for (auto& c : cells)
            c.households_by_size[trial % 6] += frac(rng);
        std::shuffle(cells.begin(), cells.end(), rng);

        std::stringstream out;
        write_census(out, cells);
        const auto loaded = load_census(out);

        auto sorted = cells;
        std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.id < b.id; });
        EXPECT_EQ(loaded, sorted);

        std::stringstream again;
        write_census(again, loaded);
        EXPECT_EQ(load_census(again), loaded);
    }
}

TEST(LoadWeather, CompleteStation)
{
    const auto w = weather(station_rows("s1"));
    ASSERT_EQ(w.stations.size(), 1u);
    EXPECT_EQ(w.stations[0].id, "s1");
    EXPECT_EQ(w.stations[0].location, GeoPoint(52, 13));
    for (int h = 0; h < 24; ++h)
        EXPECT_EQ(w.series[0].temps_c[h], 20.0 + h);
}

TEST(LoadWeather, LocalHoursFollowUtcOffset)
{
    // With offset 0 local hour h is UTC hour h; the rows above were shifted by
    // two hours, so local 02:00 UTC+0 carries the value written for h = 4.
    std::string rows = station_rows("s1");
    rows += "s1,52,13,2025-07-02T22:00:00Z,44.0\ns1,52,13,2025-07-02T23:00:00Z,45.0\n";
    const auto w = weather(rows, 0);
    EXPECT_EQ(w.series[0].temps_c[0], 22.0);
    EXPECT_EQ(w.series[0].temps_c[21], 43.0);
    EXPECT_EQ(w.series[0].temps_c[23], 45.0);
}

TEST(LoadWeather, IgnoresReadingsOutsideTheDay)
{
    const auto w = weather(station_rows("s1") + "s1,52,13,2025-07-03T12:00:00Z,99\n");
    EXPECT_EQ(w.series[0].temps_c[14], 34.0);
}

TEST(LoadWeather, InterpolatesSingleInteriorGap)
{
    std::string rows = station_rows("s1", {13});
    // Hours 12 and 14 read 30 and 32.
    for (auto [from, to] : {std::pair{"32.0", "30.0"}, std::pair{"34.0", "32.0"}}) {
        const auto pos = rows.find(std::string(",") + from + "\n");
        rows.replace(pos + 1, 4, to);
    }
    const auto w = weather(rows);
    EXPECT_EQ(w.series[0].temps_c[12], 30.0);
    EXPECT_EQ(w.series[0].temps_c[13], 31.0);
    EXPECT_EQ(w.series[0].temps_c[14], 32.0);
}

TEST(LoadWeather, GapErrors)
{
    EXPECT_EQ(error_of([] { weather(station_rows("s1", {13, 14})); }), Kind::MissingHours);
    EXPECT_EQ(error_of([] { weather(station_rows("s1", {0})); }), Kind::MissingHours);
    EXPECT_EQ(error_of([] { weather(station_rows("s1", {23})); }), Kind::MissingHours);
    EXPECT_NO_THROW(weather(station_rows("s1", {5, 7, 9})));
    try {
        weather(station_rows("s1", {13, 14}));
    }
    catch (const IngestError& e) {
        EXPECT_NE(std::string(e.what()).find("13,14"), std::string::npos) << e.what();
    }
}

TEST(LoadWeather, RowErrors)
{
    EXPECT_EQ(error_of([] { weather(station_rows("s1") + "s1,52,13\n"); }),
              Kind::MalformedRow);
    EXPECT_EQ(error_of([] { weather(station_rows("s1") + "s1,52,13,2025-07-02T10:00:00Z,1\n"); }),
              Kind::DuplicateReading);
    EXPECT_EQ(error_of([] { weather("s1,52,13,2025/07/02 10:00,1\n"); }), Kind::MalformedTimestamp);
    EXPECT_EQ(error_of([] { weather("s1,52,13,2025-07-02T10:30:00Z,1\n"); }),
              Kind::MalformedTimestamp);
    EXPECT_EQ(error_of([] { weather("s1,52,13,2025-02-30T10:00:00Z,1\n"); }),
              Kind::MalformedTimestamp);
    EXPECT_EQ(error_of([] { weather("s1,52,13,2025-07-02T10:00:00Z,warm\n"); }), Kind::MalformedRow);
    EXPECT_EQ(error_of([] { weather("s1,52,200,2025-07-02T10:00:00Z,1\n"); }),
              Kind::InvalidCoordinate);
    EXPECT_EQ(error_of([] { weather(station_rows("s1") + "s1,53,13,2025-07-05T10:00:00Z,1\n"); }),
              Kind::MalformedRow);
}

TEST(LoadWeather, StationsSortedAndRoundTrip)
{
    testing::Rng rng(6);
    const auto data = testing::random_weather(rng, 12);
    std::stringstream out;
    write_weather(out, data, kDay, 2);

    // Reverse the data rows: input order must not matter.
    std::vector<std::string> lines;
    std::string line;
    std::getline(out, line);
    const std::string header = line;
    while (std::getline(out, line))
        lines.push_back(line);
    std::reverse(lines.begin(), lines.end());
    std::string shuffled = header + "\n";
    for (const auto& l : lines)
        shuffled += l + "\n";

    std::istringstream in(shuffled);
    const auto loaded = load_weather(in, kDay, 2);
    ASSERT_EQ(loaded.stations.size(), 12u);
    EXPECT_EQ(loaded.stations, data.stations);
    for (std::size_t i = 0; i < data.series.size(); ++i) {
        EXPECT_EQ(loaded.series[i].station_id, data.series[i].station_id);
        EXPECT_EQ(loaded.series[i].temps_c, data.series[i].temps_c);
    }
}

TEST(Timestamps, ParseVariants)
{
    const auto expected = sys_seconds{sys_days{kDay}} + hours{13};
    EXPECT_EQ(parse_utc_timestamp("2025-07-02T13:00:00Z"), expected);
    EXPECT_EQ(parse_utc_timestamp("2025-07-02T13:00Z"), expected);
    EXPECT_EQ(parse_utc_timestamp("2025-07-02T13:00:00+00:00"), expected);
    EXPECT_EQ(parse_utc_timestamp("2025-07-02 13:00:00"), expected);
    EXPECT_FALSE(parse_utc_timestamp("2025-07-02T25:00:00Z"));
    EXPECT_FALSE(parse_utc_timestamp("2025-07-02T13:00:00+02:00"));
    EXPECT_EQ(format_utc_timestamp(expected), "2025-07-02T13:00:00Z");
    EXPECT_EQ(parse_date("2025-07-02"), kDay);
    EXPECT_FALSE(parse_date("2025-13-02"));
    EXPECT_EQ(format_date(kDay), "2025-07-02");
}

TEST(LoadConfig, EmptyGivesDefaults)
{
    const auto c = config("");
    EXPECT_EQ(c.activation.threshold_c, 18.5);
    EXPECT_EQ(c.activation.scale_c, 3.5);
    EXPECT_EQ(c.activation.shape, 3.5);
    EXPECT_EQ(c.activation.dt_hours, 1.0);
    EXPECT_EQ(c.activation.tau_c_hours, 1.0);
    EXPECT_EQ(c.scenario.p_max_kw, 2.1);
    EXPECT_EQ(c.scenario.eta, 0.16);
    EXPECT_EQ(c.scenario.dt_hours, 1.0);
    EXPECT_EQ(c.date, kDay);
    EXPECT_EQ(c.utc_offset_hours, 2);
    EXPECT_FALSE(c.baseline_gw);
    EXPECT_FALSE(c.matrix);
    EXPECT_FALSE(c.presence_path);
    EXPECT_EQ(c.effective_matrix(), default_matrix());
}

TEST(LoadConfig, Overrides)
{
    EXPECT_EQ(config("[scenario]\neta = 0.35\n").scenario.eta, 0.35);
    const auto c = config(R"(
date = 2025-07-03
utc_offset_hours = 1
baseline_gw = 61.3
presence_file = "presence.csv"

[scenario]
p_max_kw = 3
dt_hours = 0.5

[activation]
u = 20.0
l = 4
k = 2.5
dt = 0.5
tau_c = 2.0
)");
    EXPECT_EQ(c.date, (year{2025} / July / day{3}));
    EXPECT_EQ(c.utc_offset_hours, 1);
    EXPECT_EQ(c.baseline_gw, 61.3);
    EXPECT_EQ(c.presence_path, std::filesystem::path("presence.csv"));
    EXPECT_EQ(c.scenario.p_max_kw, 3.0);
    EXPECT_EQ(c.scenario.dt_hours, 0.5);
    EXPECT_EQ(c.activation, (ActivationParams{20.0, 4.0, 2.5, 0.5, 2.0}));
    EXPECT_EQ(config("date = \"2025-08-01\"").date, (year{2025} / August / day{1}));
}

TEST(LoadConfig, MatrixOverride)
{
    std::string toml;
    for (const char* row : {"hh_1", "hh_2", "hh_3", "hh_4", "hh_5", "hh_6p"})
        toml += std::string("[matrix.") + row + "]\nSingles = 0.5\nRetired = 0.5\n";
    const auto c = config(toml);
    ASSERT_TRUE(c.matrix);
    EXPECT_EQ((*c.matrix)(3, DemographicGroup::Retired), 0.5);
    EXPECT_EQ((*c.matrix)(3, DemographicGroup::Families), 0.0);

    EXPECT_EQ(error_of([&] { config(toml + "[matrix.hh_7]\nSingles = 1\n"); }), Kind::UnknownKey);
    EXPECT_EQ(error_of([] { config("[matrix.hh_1]\nSingles = 1\n"); }), Kind::InvalidValue);
    std::string bad = toml;
    bad.replace(bad.find("Singles = 0.5"), 13, "Singles = 0.9");
    EXPECT_EQ(error_of([&] { config(bad); }), Kind::InvalidValue);
    std::string typo = toml;
    typo.replace(typo.find("Singles"), 7, "Single");
    EXPECT_EQ(error_of([&] { config(typo); }), Kind::UnknownKey);
}

TEST(LoadConfig, Errors)
{
    EXPECT_EQ(error_of([] { config("[scenario]\neta = 1.5\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("[scenario]\neta = \"high\"\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("[scenario]\nEta = 0.3\n"); }), Kind::UnknownKey);
    EXPECT_EQ(error_of([] { config("thread = 4\n"); }), Kind::UnknownKey);
    EXPECT_EQ(error_of([] { config("[activation]\nl = 0\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("[activation]\nk = -1\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("[activation]\ntau = 1\n"); }), Kind::UnknownKey);
    EXPECT_EQ(error_of([] { config("utc_offset_hours = 15\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("utc_offset_hours = 1.5\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("baseline_gw = 0\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("date = \"July 2\"\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("scenario = 3\n"); }), Kind::InvalidValue);
    EXPECT_EQ(error_of([] { config("[scenario\n"); }), Kind::InvalidValue);
    try {
        config("[scenario]\neta = 1.5\n");
    }
    catch (const IngestError& e) {
        EXPECT_NE(std::string(e.what()).find("scenario"), std::string::npos) << e.what();
    }
}

} // namespace
} // namespace acload
