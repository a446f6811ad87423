#pragma once

#include "acload/activation.hpp"
#include "acload/demand.hpp"
#include "acload/demographics.hpp"
#include "acload/geo.hpp"

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acload
{

class IngestError : public std::runtime_error
{
  public:
    enum class Kind
    {
        MalformedHeader,
        MalformedRow,
        DuplicateGridId,
        InvalidCoordinate,
        MissingHours,
        MalformedTimestamp,
        DuplicateReading,
        UnknownKey,
        InvalidValue,
    };

    IngestError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind)
    {
    }

    Kind kind() const { return kind_; }
    std::string_view kind_name() const;

  private:
    Kind kind_;
};

struct RunConfig
{
    ScenarioParams scenario;
    ActivationParams activation;
    std::optional<DistributionMatrix> matrix;
    /// As written in the config; relative paths are resolved by the caller.
    std::optional<std::filesystem::path> presence_path;
    std::chrono::year_month_day date{std::chrono::year{2025}, std::chrono::July,
                                     std::chrono::day{2}};
    /// Whole hours east of UTC; the default is Central European Summer Time.
    int utc_offset_hours = 2;
    std::optional<double> baseline_gw;

    DistributionMatrix effective_matrix() const { return matrix.value_or(default_matrix()); }
};

/// CSV `grid_id,lat,lon,hh_1,hh_2,hh_3,hh_4,hh_5,hh_6p`. Empty counts and the
/// privacy mask `-1` read as zero. Cells come back sorted by id.
std::vector<GridCell> load_census(std::istream& in);
void write_census(std::ostream& out, std::span<const GridCell> cells);

struct WeatherData
{
    /// Both sorted by station id and index-aligned.
    std::vector<WeatherStation> stations;
    std::vector<TemperatureSeries> series;
};

/// CSV `station_id,lat,lon,timestamp_utc,temp_c`, keeping the 24 local hours
/// of `date`. One missing interior hour is filled by the mean of its
/// neighbours; any other gap is a MissingHours error.
WeatherData load_weather(std::istream& in, std::chrono::year_month_day date,
                         int utc_offset_hours);
void write_weather(std::ostream& out, const WeatherData& data, std::chrono::year_month_day date,
                   int utc_offset_hours);

/// TOML run configuration. Every key is optional; unknown keys are rejected.
RunConfig load_config(std::istream& in);

/// Parses `YYYY-MM-DDTHH:MM[:SS]` with an optional `Z` or `+00:00` suffix.
std::optional<std::chrono::sys_seconds> parse_utc_timestamp(std::string_view s);
std::string format_utc_timestamp(std::chrono::sys_seconds t);
std::optional<std::chrono::year_month_day> parse_date(std::string_view s);
std::string format_date(std::chrono::year_month_day d);

} // namespace acload
