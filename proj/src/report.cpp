#include "acload/report.hpp"

#include "acload/text.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>

#ifndef ACLOAD_VERSION
#define ACLOAD_VERSION "0.0.0"
#endif

namespace acload
{

namespace
{

std::string cells_header()
{
    std::string header = "grid_id";
    for (std::size_t h = 0; h < kHoursPerDay; ++h)
        header += ",h" + std::to_string(h);
    return header;
}

nlohmann::ordered_json hourly_array(const HourlySeries& s, double divisor)
{
    auto arr = nlohmann::ordered_json::array();
    for (double v : s)
        arr.push_back(v / divisor);
    return arr;
}

} // namespace

std::string_view tool_version() { return ACLOAD_VERSION; }

void write_cells_csv(std::ostream& out, std::span<const CellDemandSeries> cells)
{
    out << cells_header() << '\n';
    for (const auto& c : cells) {
        out << c.cell_id;
        for (double v : c.kwh)
            out << ',' << text::format_double(v);
        out << '\n';
    }
}

std::vector<CellDemandSeries> read_cells_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || text::trim(line) != cells_header())
        throw std::runtime_error("cells.csv: unexpected header");
    std::vector<CellDemandSeries> cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty())
            continue;
        const auto f = text::split_fields(line);
        if (f.size() != kHoursPerDay + 1)
            throw std::runtime_error("cells.csv line " + std::to_string(line_no)
                                     + ": expected 25 fields");
        CellDemandSeries c{std::string(f[0]), {}};
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            const auto v = text::parse_double(f[h + 1]);
            if (!v)
                throw std::runtime_error("cells.csv line " + std::to_string(line_no)
                                         + ": bad number");
            c.kwh[h] = *v;
        }
        cells.push_back(std::move(c));
    }
    return cells;
}

void write_national_csv(std::ostream& out, const NationalDemandSeries& national)
{
    out << "hour,value_gwh\n";
    for (std::size_t h = 0; h < kHoursPerDay; ++h)
        out << h << ',' << text::format_double(national.kwh[h] / kKwhPerGwh) << '\n';
}

void write_cells_geojson(std::ostream& out, std::span<const GridCell> cells,
                         std::span<const CellDemandSeries> demand)
{
    if (cells.size() != demand.size())
        throw std::invalid_argument("geojson: cell and demand counts differ");

    // Streamed by hand: a DOM for ~200k features is several hundred MB.
    out << "{\"type\":\"FeatureCollection\",\"features\":[";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const auto& d = demand[i];
        if (i > 0)
            out << ',';
        out << "\n{\"type\":\"Feature\",\"geometry\":{\"type\":\"Point\",\"coordinates\":["
            << text::format_double(c.centroid.lon()) << ',' << text::format_double(c.centroid.lat())
            << "]},\"properties\":{\"grid_id\":" << nlohmann::json(c.id).dump()
            << ",\"peak_kwh\":" << text::format_double(peak(d.kwh).value);
        for (std::size_t h = 0; h < kHoursPerDay; ++h)
            out << ",\"h" << h << "\":" << text::format_double(d.kwh[h]);
        out << "}}";
    }
    out << "\n]}\n";
}

nlohmann::ordered_json config_to_json(const RunConfig& config)
{
    nlohmann::ordered_json j;
    j["date"] = format_date(config.date);
    j["utc_offset_hours"] = config.utc_offset_hours;
    j["baseline_gw"] = config.baseline_gw ? nlohmann::ordered_json(*config.baseline_gw) : nullptr;
    j["presence_file"] =
        config.presence_path ? nlohmann::ordered_json(config.presence_path->generic_string()) : nullptr;
    j["scenario"] = {{"p_max_kw", config.scenario.p_max_kw},
                     {"eta", config.scenario.eta},
                     {"dt_hours", config.scenario.dt_hours}};
    j["activation"] = {{"u", config.activation.threshold_c},
                       {"l", config.activation.scale_c},
                       {"k", config.activation.shape},
                       {"dt", config.activation.dt_hours},
                       {"tau_c", config.activation.tau_c_hours}};

    const DistributionMatrix m = config.effective_matrix();
    nlohmann::ordered_json matrix;
    for (std::size_t s = 0; s < kHouseholdSizes; ++s) {
        nlohmann::ordered_json row;
        for (auto g : kAllGroups)
            row[std::string(group_name(g))] = m(s, g);
        matrix[std::string(size_label(s))] = row;
    }
    j["matrix"] = matrix;
    j["matrix_source"] = config.matrix ? "config" : "default";
    return j;
}

nlohmann::ordered_json summary_json(const SimulationResult& result, const RunConfig& config,
                                    std::size_t top_n)
{
    nlohmann::ordered_json j;
    const double peak_gw = result.peak.value / kKwhPerGwh;
    j["peak_hour"] = result.peak.hour;
    j["peak_gw"] = peak_gw;
    if (config.baseline_gw) {
        j["baseline_gw"] = *config.baseline_gw;
        j["relative_increase_pct"] = relative_increase(peak_gw, *config.baseline_gw);
    }
    j["cells"] = result.cells.size();
    j["total_households"] = result.total_households;
    j["national_gwh"] = hourly_array(result.national.kwh, kKwhPerGwh);

    auto dist = nlohmann::ordered_json::array();
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        const auto& s = result.distribution.hours[h];
        dist.push_back({{"hour", h},
                        {"min_kwh", s.min},
                        {"p25_kwh", s.p25},
                        {"median_kwh", s.median},
                        {"p75_kwh", s.p75},
                        {"p99_kwh", s.p99},
                        {"max_kwh", s.max}});
    }
    j["hourly_distribution"] = dist;

    auto top = nlohmann::ordered_json::array();
    for (const auto& r : top_cells(result.cells, result.peak.hour, top_n))
        top.push_back({{"grid_id", r.cell_id}, {"kwh", r.kwh}});
    j["top_cells_at_peak"] = top;
    return j;
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 init failed");

    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    if (in.bad())
        throw std::runtime_error("read error on " + path.string());

    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

nlohmann::ordered_json manifest_json(std::span<const InputDigest> inputs, const RunConfig& config,
                                     std::size_t cell_count, std::size_t station_count)
{
    nlohmann::ordered_json j;
    j["tool"] = "acload";
    j["version"] = std::string(tool_version());
    auto in = nlohmann::ordered_json::object();
    for (const auto& d : inputs)
        in[d.role] = {{"path", d.path}, {"sha256", d.sha256}};
    j["inputs"] = in;
    j["config"] = config_to_json(config);
    j["cells"] = cell_count;
    j["stations"] = station_count;
    return j;
}

} // namespace acload
