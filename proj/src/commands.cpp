#include "acload/commands.hpp"

#include "acload/ingest.hpp"
#include "acload/parallel.hpp"
#include "acload/pipeline.hpp"
#include "acload/presence.hpp"
#include "acload/report.hpp"
#include "acload/text.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <fstream>
#include <ostream>

namespace acload
{

namespace fs = std::filesystem;

namespace
{

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const fs::path& path)
{
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
        throw IoError("cannot read " + path.string() + ": no such file");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return in;
}

template <typename Fn>
void write_output(const fs::path& path, Fn&& fn)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot create " + path.string());
    fn(out);
    out.flush();
    if (!out)
        throw IoError("write failed for " + path.string());
}

fs::path resolve_presence(const InputPaths& inputs, const fs::path& presence)
{
    if (presence.is_absolute() || !inputs.config)
        return presence;
    return inputs.config->parent_path() / presence;
}

/// Everything needed for a run, loaded and validated.
struct LoadedInputs
{
    RunConfig config;
    PresenceProfile presence = default_profiles();
    std::optional<fs::path> presence_path;
    std::vector<GridCell> cells;
    WeatherData weather;
};

RunConfig load_config_file(const InputPaths& inputs)
{
    if (!inputs.config)
        return RunConfig{};
    auto in = open_input(*inputs.config);
    return load_config(in);
}

PresenceProfile load_presence_file(const fs::path& path)
{
    auto in = open_input(path);
    return load_profiles(in);
}

std::vector<GridCell> load_census_file(const fs::path& path)
{
    auto in = open_input(path);
    auto cells = load_census(in);
    if (cells.empty())
        throw IngestError(IngestError::Kind::MalformedRow, "census has no grid cells");
    return cells;
}

WeatherData load_weather_file(const fs::path& path, const RunConfig& config)
{
    auto in = open_input(path);
    auto weather = load_weather(in, config.date, config.utc_offset_hours);
    if (weather.stations.empty())
        throw IngestError(IngestError::Kind::MissingHours, "weather file has no stations");
    return weather;
}

LoadedInputs load_all(const InputPaths& inputs)
{
    LoadedInputs loaded;
    loaded.config = load_config_file(inputs);
    if (loaded.config.presence_path) {
        loaded.presence_path = resolve_presence(inputs, *loaded.config.presence_path);
        loaded.presence = load_presence_file(*loaded.presence_path);
    }
    loaded.cells = load_census_file(inputs.census);
    loaded.weather = load_weather_file(inputs.weather, loaded.config);
    return loaded;
}

std::string error_kind(const std::exception& e)
{
    if (const auto* ie = dynamic_cast<const IngestError*>(&e))
        return std::string(ie->kind_name());
    if (const auto* pe = dynamic_cast<const PresenceError*>(&e))
        return std::string(pe->kind_name());
    if (dynamic_cast<const MatrixError*>(&e))
        return "InvalidMatrix";
    if (dynamic_cast<const IoError*>(&e))
        return "IoError";
    return "InvalidInput";
}

/// Maps the exceptions a command can raise onto exit codes.
template <typename Fn>
int guarded(const char* command, Fn&& fn)
{
    try {
        return fn();
    }
    catch (const IoError& e) {
        spdlog::error("{}: {}", command, e.what());
        return kExitIo;
    }
    catch (const InvariantViolation& e) {
        spdlog::error("{}: internal invariant violated: {}", command, e.what());
        return kExitInternal;
    }
    catch (const std::runtime_error& e) {
        spdlog::error("{}: {}: {}", command, error_kind(e), e.what());
        return kExitValidation;
    }
    catch (const std::invalid_argument& e) {
        spdlog::error("{}: {}: {}", command, error_kind(e), e.what());
        return kExitValidation;
    }
    catch (const std::exception& e) {
        spdlog::error("{}: unexpected failure: {}", command, e.what());
        return kExitInternal;
    }
}

} // namespace

int cmd_validate(const InputPaths& inputs, std::ostream& out)
{
    nlohmann::ordered_json report;
    auto checks = nlohmann::ordered_json::array();
    bool io_failure = false;
    bool invalid = false;

    const auto check = [&](const char* name, auto&& fn) {
        nlohmann::ordered_json entry{{"input", name}};
        try {
            entry["ok"] = true;
            fn(entry);
        }
        catch (const IoError& e) {
            entry["ok"] = false;
            entry["error"] = "IoError";
            entry["message"] = e.what();
            io_failure = true;
        }
        catch (const std::exception& e) {
            entry["ok"] = false;
            entry["error"] = error_kind(e);
            entry["message"] = e.what();
            invalid = true;
        }
        checks.push_back(std::move(entry));
    };

    RunConfig config;
    check("config", [&](auto& entry) {
        config = load_config_file(inputs);
        if (inputs.config)
            entry["path"] = inputs.config->string();
        entry["matrix"] = config.matrix ? "config" : "default";
    });
    check("presence", [&](auto& entry) {
        if (config.presence_path) {
            const auto path = resolve_presence(inputs, *config.presence_path);
            entry["path"] = path.string();
            load_presence_file(path);
        }
        else {
            entry["source"] = "default";
        }
    });
    check("census", [&](auto& entry) {
        entry["path"] = inputs.census.string();
        entry["cells"] = load_census_file(inputs.census).size();
    });
    check("weather", [&](auto& entry) {
        entry["path"] = inputs.weather.string();
        entry["stations"] = load_weather_file(inputs.weather, config).stations.size();
    });

    const int code = io_failure ? kExitIo : invalid ? kExitValidation : kExitOk;
    report["valid"] = code == kExitOk;
    report["checks"] = checks;
    out << report.dump(2) << '\n';
    if (code != kExitOk)
        spdlog::error("validate: inputs failed validation");
    return code;
}

int cmd_run(const RunOptions& options, std::ostream& out)
{
    return guarded("run", [&] {
        const auto started = std::chrono::steady_clock::now();
        LoadedInputs loaded = load_all(options.inputs);
        if (options.baseline_gw) {
            if (!(*options.baseline_gw > 0.0))
                throw IngestError(IngestError::Kind::InvalidValue, "--baseline-gw must be > 0");
            loaded.config.baseline_gw = options.baseline_gw;
        }
        spdlog::info("run: {} cells, {} stations, {} threads", loaded.cells.size(),
                     loaded.weather.stations.size(), resolve_threads(options.threads));

        const SimulationResult result =
            simulate(loaded.cells, loaded.weather, loaded.config, loaded.presence, options.threads);

        std::error_code ec;
        fs::create_directories(options.out_dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + options.out_dir.string() + ": "
                          + ec.message());

        write_output(options.out_dir / "cells.csv",
                     [&](std::ostream& os) { write_cells_csv(os, result.cells); });
        write_output(options.out_dir / "national.csv",
                     [&](std::ostream& os) { write_national_csv(os, result.national); });
        write_output(options.out_dir / "summary.json", [&](std::ostream& os) {
            os << summary_json(result, loaded.config).dump(2) << '\n';
        });
        write_output(options.out_dir / "cells.geojson", [&](std::ostream& os) {
            write_cells_geojson(os, loaded.cells, result.cells);
        });

        std::vector<InputDigest> digests;
        const auto digest = [&](const char* role, const fs::path& p) {
            try {
                digests.push_back({role, p.generic_string(), sha256_file(p)});
            }
            catch (const std::runtime_error& e) {
                throw IoError(e.what());
            }
        };
        digest("census", options.inputs.census);
        digest("weather", options.inputs.weather);
        if (options.inputs.config)
            digest("config", *options.inputs.config);
        if (loaded.presence_path)
            digest("presence", *loaded.presence_path);
        write_output(options.out_dir / "manifest.json", [&](std::ostream& os) {
            os << manifest_json(digests, loaded.config, loaded.cells.size(),
                                loaded.weather.stations.size())
                      .dump(2)
               << '\n';
        });

        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        nlohmann::ordered_json status{{"status", "ok"},
                                      {"out_dir", options.out_dir.generic_string()},
                                      {"peak_hour", result.peak.hour},
                                      {"peak_gw", result.peak.value / kKwhPerGwh},
                                      {"cells", result.cells.size()},
                                      {"wall_clock_seconds", seconds}};
        out << status.dump() << '\n';
        spdlog::info("run: peak {:.6f} GW at hour {} ({:.2f} s)", result.peak.value / kKwhPerGwh,
                     result.peak.hour, seconds);
        return kExitOk;
    });
}

int cmd_top(const fs::path& results_dir, std::size_t hour, std::size_t n, std::ostream& out)
{
    return guarded("top", [&] {
        if (hour >= kHoursPerDay || n == 0)
            throw std::invalid_argument("top: hour must be in [0, 23] and n >= 1");
        std::vector<CellDemandSeries> cells;
        {
            auto in = open_input(results_dir / "cells.csv");
            try {
                cells = read_cells_csv(in);
            }
            catch (const std::runtime_error& e) {
                throw IoError(e.what());
            }
        }
        out << "rank,grid_id,kwh\n";
        std::size_t rank = 0;
        for (const auto& r : top_cells(cells, hour, n))
            out << ++rank << ',' << r.cell_id << ',' << text::format_double(r.kwh) << '\n';
        return kExitOk;
    });
}

} // namespace acload
