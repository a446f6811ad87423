#pragma once

#include "acload/ingest.hpp"
#include "acload/pipeline.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace acload
{

inline constexpr double kKwhPerGwh = 1e6;

/// `grid_id,h0..h23`, kWh.
void write_cells_csv(std::ostream& out, std::span<const CellDemandSeries> cells);
std::vector<CellDemandSeries> read_cells_csv(std::istream& in);

/// `hour,value_gwh`.
void write_national_csv(std::ostream& out, const NationalDemandSeries& national);

/// One Point feature per cell at its centroid. Properties: grid_id, peak_kwh
/// and h0..h23 in kWh.
void write_cells_geojson(std::ostream& out, std::span<const GridCell> cells,
                         std::span<const CellDemandSeries> demand);

nlohmann::ordered_json config_to_json(const RunConfig& config);

nlohmann::ordered_json summary_json(const SimulationResult& result, const RunConfig& config,
                                    std::size_t top_n = 10);

struct InputDigest
{
    std::string role;
    std::string path;
    std::string sha256;
};

/// Lowercase hex SHA-256 of the file bytes. Throws std::runtime_error when
/// the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// Reproducibility record. Holds only run-invariant data so that identical
/// inputs give identical bytes.
nlohmann::ordered_json manifest_json(std::span<const InputDigest> inputs, const RunConfig& config,
                                     std::size_t cell_count, std::size_t station_count);

std::string_view tool_version();

} // namespace acload
