#pragma once

// Shared generators and fixture writers for the unit and acceptance suites.

#include "acload/demand.hpp"
#include "acload/geo.hpp"
#include "acload/ingest.hpp"

#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace acload::testing
{

using Rng = std::mt19937_64;

/// Zero-padded id so lexicographic and numeric order agree.
std::string cell_id(std::size_t i);
std::string station_id(std::size_t i);

/// Cells with centroids in a Germany-sized box and integer household counts
/// drawn uniformly from [0, max_per_size] for every size bin.
std::vector<GridCell> random_cells(Rng& rng, std::size_t n, int max_per_size = 60);

std::vector<WeatherStation> random_stations(Rng& rng, std::size_t n);

/// 26 + 8 cos(2 pi (h - 15) / 24): 34 C at 15:00, 18 C at 03:00.
HourlySeries afternoon_sinusoid();

/// Per-station sinusoids with random amplitude and mean so that every
/// station crosses the activation threshold at some hour.
WeatherData random_weather(Rng& rng, std::size_t n_stations);

struct FixturePaths
{
    std::filesystem::path census;
    std::filesystem::path weather;
    std::filesystem::path config;
};

/// Writes census.csv, weather.csv and config.toml under `dir`.
FixturePaths write_fixture(const std::filesystem::path& dir, std::span<const GridCell> cells,
                           const WeatherData& weather, const std::string& config_toml = "");

/// Fresh, empty directory under the system temp dir, removed on destruction.
class TempDir
{
  public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);

struct MonteCarloEstimate
{
    double mean;
    double standard_error;
};

/// Simulates one cell-hour household by household: each of `households`
/// owns a unit with probability eta, is home with probability `alpha` and
/// switches on with probability `activation`; a running unit draws
/// p_max * dt. Returns the sample mean of the cell total and its standard
/// error over `samples` independent realizations.
MonteCarloEstimate monte_carlo_cell_hour(Rng& rng, int households, double alpha,
                                         double activation, const ScenarioParams& scen,
                                         int samples);

} // namespace acload::testing
