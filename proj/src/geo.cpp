#include "acload/geo.hpp"

#include "acload/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

namespace acload
{

namespace
{

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

} // namespace

GeoPoint::GeoPoint(double lat, double lon) : lat_(lat), lon_(lon)
{
    if (!valid(lat, lon))
        throw GeoError("coordinate out of range: lat " + std::to_string(lat) + ", lon "
                       + std::to_string(lon));
}

bool GeoPoint::valid(double lat, double lon)
{
    return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0
        && lon >= -180.0 && lon <= 180.0;
}

double GridCell::total_households() const
{
    return std::accumulate(households_by_size.begin(), households_by_size.end(), 0.0);
}

StationAssignment::StationAssignment(std::vector<Entry> entries) : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.cell_id < b.cell_id; });
}

const std::string& StationAssignment::station_for(const std::string& cell_id) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), cell_id,
                               [](const Entry& e, const std::string& id) { return e.cell_id < id; });
    if (it == entries_.end() || it->cell_id != cell_id)
        throw std::out_of_range("cell not in assignment: " + cell_id);
    return it->station_id;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b)
{
    const double phi1 = deg_to_rad(a.lat());
    const double phi2 = deg_to_rad(b.lat());
    const double dphi = phi2 - phi1;
    const double dlambda = deg_to_rad(b.lon() - a.lon());
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

std::size_t nearest_station(const GeoPoint& p, std::span<const WeatherStation> stations)
{
    if (stations.empty())
        throw GeoError("no weather stations");
    std::size_t best = 0;
    double best_distance = haversine_km(p, stations[0].location);
    for (std::size_t i = 1; i < stations.size(); ++i) {
        const double d = haversine_km(p, stations[i].location);
        if (d < best_distance || (d == best_distance && stations[i].id < stations[best].id)) {
            best = i;
            best_distance = d;
        }
    }
    return best;
}

StationAssignment assign_stations(std::span<const GridCell> cells,
                                  std::span<const WeatherStation> stations,
                                  unsigned threads)
{
    if (stations.empty())
        throw GeoError("station assignment requires at least one weather station");
    if (cells.empty())
        throw GeoError("station assignment requires at least one grid cell");

    std::unordered_set<std::string> seen;
    for (const auto& s : stations)
        if (!seen.insert(s.id).second)
            throw GeoError("duplicate station id: " + s.id);
    seen.clear();
    for (const auto& c : cells)
        if (!seen.insert(c.id).second)
            throw GeoError("duplicate cell id: " + c.id);

    std::vector<StationAssignment::Entry> entries(cells.size());
    parallel_for(cells.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& st = stations[nearest_station(cells[i].centroid, stations)];
            entries[i] = {cells[i].id, st.id};
        }
    });
    return StationAssignment(std::move(entries));
}

} // namespace acload
