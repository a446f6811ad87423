#include "acload/pipeline.hpp"

#include "acload/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace acload
{

SimulationResult simulate(std::span<const GridCell> cells, const WeatherData& weather,
                          const RunConfig& config, const PresenceProfile& presence,
                          unsigned threads)
{
    config.scenario.validate();
    config.activation.validate();
    const DistributionMatrix matrix = config.effective_matrix();
    require_valid(matrix);

    SimulationResult result;
    result.assignment = assign_stations(cells, weather.stations, threads);

    std::vector<HourlySeries> activation(weather.series.size());
    for (std::size_t i = 0; i < weather.series.size(); ++i)
        activation[i] = activation_series(config.activation, weather.series[i]);

    const auto station_index = [&](const std::string& id) {
        auto it = std::lower_bound(weather.stations.begin(), weather.stations.end(), id,
                                   [](const WeatherStation& s, const std::string& v) { return s.id < v; });
        if (it == weather.stations.end() || it->id != id)
            throw InvariantViolation("assigned station missing from weather data: " + id);
        return static_cast<std::size_t>(it - weather.stations.begin());
    };

    result.cells.resize(cells.size());
    parallel_for(cells.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto station = station_index(result.assignment.station_for(cells[i].id));
            result.cells[i] = cell_demand(distribute(cells[i], matrix), presence,
                                          activation[station], config.scenario);
        }
    });

    CompensatedSum households;
    for (const auto& c : cells)
        households.add(c.total_households());
    result.total_households = households.value();

    result.national = national_demand(result.cells);
    result.distribution = hourly_distribution(result.cells);
    result.peak = peak(result.national);
    check_invariants(result, config.scenario);
    return result;
}

void check_invariants(const SimulationResult& result, const ScenarioParams& scenario)
{
    const double cap = scenario.per_household_cap_kwh() * result.total_households;
    for (const auto& c : result.cells)
        for (double v : c.kwh)
            if (!(std::isfinite(v) && v >= 0.0))
                throw InvariantViolation("cell " + c.cell_id + " has invalid demand "
                                         + std::to_string(v));
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        // A few ulps of slack: group sums of fractional households round.
        if (result.national.kwh[h] > cap * (1.0 + 1e-12))
            throw InvariantViolation("national demand at hour " + std::to_string(h)
                                     + " exceeds the adoption cap");
    }
}

} // namespace acload
