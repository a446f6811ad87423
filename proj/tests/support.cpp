#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

namespace acload::testing
{

namespace fs = std::filesystem;

std::string cell_id(std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "cell_%07zu", i);
    return buf;
}

std::string station_id(std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "st_%03zu", i);
    return buf;
}

std::vector<GridCell> random_cells(Rng& rng, std::size_t n, int max_per_size)
{
    std::uniform_real_distribution<double> lat(47.3, 55.0);
    std::uniform_real_distribution<double> lon(5.9, 15.0);
    std::uniform_int_distribution<int> count(0, max_per_size);
    std::vector<GridCell> cells;
    cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        GridCell c{cell_id(i), GeoPoint(lat(rng), lon(rng)), {}};
        for (auto& v : c.households_by_size)
            v = count(rng);
        cells.push_back(std::move(c));
    }
    return cells;
}

std::vector<WeatherStation> random_stations(Rng& rng, std::size_t n)
{
    std::uniform_real_distribution<double> lat(47.3, 55.0);
    std::uniform_real_distribution<double> lon(5.9, 15.0);
    std::vector<WeatherStation> stations;
    for (std::size_t i = 0; i < n; ++i)
        stations.push_back({station_id(i), GeoPoint(lat(rng), lon(rng))});
    return stations;
}

HourlySeries afternoon_sinusoid()
{
    HourlySeries t{};
    for (std::size_t h = 0; h < kHoursPerDay; ++h)
        t[h] = 26.0 + 8.0 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(h) - 15.0) / 24.0);
    return t;
}

WeatherData random_weather(Rng& rng, std::size_t n_stations)
{
    std::uniform_real_distribution<double> mean(22.0, 28.0);
    std::uniform_real_distribution<double> amplitude(4.0, 9.0);
    WeatherData data;
    data.stations = random_stations(rng, n_stations);
    for (const auto& st : data.stations) {
        TemperatureSeries s{st.id, {}};
        const double m = mean(rng);
        const double a = amplitude(rng);
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            // Rounded to 0.1 C like station exports.
            const double raw =
                m + a * std::cos(2.0 * std::numbers::pi * (static_cast<double>(h) - 15.0) / 24.0);
            s.temps_c[h] = std::round(raw * 10.0) / 10.0;
        }
        data.series.push_back(std::move(s));
    }
    return data;
}

FixturePaths write_fixture(const fs::path& dir, std::span<const GridCell> cells,
                           const WeatherData& weather, const std::string& config_toml)
{
    fs::create_directories(dir);
    FixturePaths paths{dir / "census.csv", dir / "weather.csv", dir / "config.toml"};
    {
        std::ofstream out(paths.census, std::ios::binary);
        write_census(out, cells);
    }
    std::istringstream cfg_in(config_toml);
    const RunConfig cfg = load_config(cfg_in);
    {
        std::ofstream out(paths.weather, std::ios::binary);
        write_weather(out, weather, cfg.date, cfg.utc_offset_hours);
    }
    {
        std::ofstream out(paths.config, std::ios::binary);
        out << config_toml;
    }
    return paths;
}

TempDir::TempDir(const std::string& tag)
{
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path()
        / ("acload_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

MonteCarloEstimate monte_carlo_cell_hour(Rng& rng, int households, double alpha,
                                         double activation, const ScenarioParams& scen,
                                         int samples)
{
    const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double unit_kwh = scen.p_max_kw * scen.dt_hours;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        int running = 0;
        for (int i = 0; i < households; ++i) {
            const bool owns = uniform() < scen.eta;
            const bool home = uniform() < alpha;
            const bool on = uniform() < activation;
            running += owns && home && on;
        }
        const double e = running * unit_kwh;
        sum += e;
        sum_sq += e * e;
    }
    const double n = samples;
    const double mean = sum / n;
    const double variance = (sum_sq - n * mean * mean) / (n - 1.0);
    return {mean, std::sqrt(std::max(variance, 0.0) / n)};
}

} // namespace acload::testing
