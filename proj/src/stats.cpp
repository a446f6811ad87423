#include "acload/stats.hpp"

#include <algorithm>

namespace acload
{

double nearest_rank(std::span<const double> sorted, unsigned percent)
{
    if (sorted.empty())
        throw EmptyInputError("percentile of an empty sample");
    if (percent > 100)
        throw std::invalid_argument("percentile above 100");
    const std::size_t rank = std::max<std::size_t>(1, (percent * sorted.size() + 99) / 100);
    return sorted[rank - 1];
}

HourlyDistribution hourly_distribution(std::span<const CellDemandSeries> cells)
{
    if (cells.empty())
        throw EmptyInputError("hourly distribution needs at least one cell");

    HourlyDistribution out;
    std::vector<double> column(cells.size());
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            column[i] = cells[i].kwh[h];
        std::sort(column.begin(), column.end());
        out.hours[h] = {column.front(),
                        nearest_rank(column, 25),
                        nearest_rank(column, 50),
                        nearest_rank(column, 75),
                        nearest_rank(column, 99),
                        column.back()};
    }
    return out;
}

std::vector<RankedCell> top_cells(std::span<const CellDemandSeries> cells, std::size_t hour,
                                  std::size_t n)
{
    if (hour >= kHoursPerDay)
        throw std::out_of_range("hour " + std::to_string(hour) + " outside [0, 23]");
    if (n == 0)
        throw std::invalid_argument("top_cells needs n >= 1");

    std::vector<RankedCell> ranked;
    ranked.reserve(cells.size());
    for (const auto& c : cells)
        ranked.push_back({c.cell_id, c.kwh[hour]});

    const auto before = [](const RankedCell& a, const RankedCell& b) {
        if (a.kwh != b.kwh)
            return a.kwh > b.kwh;
        return a.cell_id < b.cell_id;
    };
    const std::size_t keep = std::min(n, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                      ranked.end(), before);
    ranked.resize(keep);
    return ranked;
}

double relative_increase(double peak_gw, double baseline_gw)
{
    if (!(baseline_gw > 0.0))
        throw NonPositiveBaselineError("baseline load must be > 0 GW, got "
                                       + std::to_string(baseline_gw));
    return 100.0 * peak_gw / baseline_gw;
}

} // namespace acload
