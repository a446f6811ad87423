#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace acload
{

enum ExitCode : int
{
    kExitOk = 0,
    kExitValidation = 1,
    kExitIo = 2,
    kExitInternal = 3,
};

struct InputPaths
{
    std::filesystem::path census;
    std::filesystem::path weather;
    /// Defaults apply when absent. A relative presence_file inside the config
    /// resolves against the config's directory.
    std::optional<std::filesystem::path> config;
};

struct RunOptions
{
    InputPaths inputs;
    std::filesystem::path out_dir;
    unsigned threads = 0;
    std::optional<double> baseline_gw;
};

/// Runs every input check and prints a JSON report to `out`.
int cmd_validate(const InputPaths& inputs, std::ostream& out);

/// Full simulation. Writes cells.csv, national.csv, summary.json,
/// cells.geojson and manifest.json into `out_dir`; prints a one-line JSON
/// status (including wall-clock time) to `out`.
int cmd_run(const RunOptions& options, std::ostream& out);

/// Prints `rank,grid_id,kwh` for the `n` highest cells at `hour` of a
/// previous run.
int cmd_top(const std::filesystem::path& results_dir, std::size_t hour, std::size_t n,
            std::ostream& out);

} // namespace acload
