#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acload
{

/// Mean Earth radius used for great-circle distances.
inline constexpr double kEarthRadiusKm = 6371.0;

/// Household size bins 1, 2, 3, 4, 5 and 6+.
inline constexpr std::size_t kHouseholdSizes = 6;

class GeoError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Geographic coordinate in degrees. Construction rejects out-of-range values.
class GeoPoint
{
  public:
    GeoPoint() = default;
    GeoPoint(double lat, double lon);

    double lat() const { return lat_; }
    double lon() const { return lon_; }

    static bool valid(double lat, double lon);

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

  private:
    double lat_ = 0.0;
    double lon_ = 0.0;
};

using HouseholdCounts = std::array<double, kHouseholdSizes>;

/// One census grid cell with household counts indexed by size bin.
struct GridCell
{
    std::string id;
    GeoPoint centroid;
    HouseholdCounts households_by_size{};

    double total_households() const;

    friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct WeatherStation
{
    std::string id;
    GeoPoint location;

    friend bool operator==(const WeatherStation&, const WeatherStation&) = default;
};

/// Cell-to-station mapping. Entries are sorted by cell id.
class StationAssignment
{
  public:
    struct Entry
    {
        std::string cell_id;
        std::string station_id;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    explicit StationAssignment(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// Throws std::out_of_range for unknown cells.
    const std::string& station_for(const std::string& cell_id) const;

    friend bool operator==(const StationAssignment&, const StationAssignment&) = default;

  private:
    std::vector<Entry> entries_;
};

double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// Index into `stations` of the nearest station to `p`. Equal distances
/// resolve to the lexicographically smallest station id.
std::size_t nearest_station(const GeoPoint& p, std::span<const WeatherStation> stations);

/// Maps every cell to its nearest station. Throws GeoError when either input
/// is empty or ids repeat. `threads` of 0 uses the hardware concurrency.
StationAssignment assign_stations(std::span<const GridCell> cells,
                                  std::span<const WeatherStation> stations,
                                  unsigned threads = 1);

} // namespace acload
