#pragma once

#include "acload/demand.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acload
{

struct HourSummary
{
    double min = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    double p99 = 0.0;
    double max = 0.0;

    friend bool operator==(const HourSummary&, const HourSummary&) = default;
};

struct HourlyDistribution
{
    std::array<HourSummary, kHoursPerDay> hours{};

    friend bool operator==(const HourlyDistribution&, const HourlyDistribution&) = default;
};

class EmptyInputError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class NonPositiveBaselineError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Nearest-rank percentile of ascending `sorted`: the element at rank
/// ceil(percent * n / 100), at least 1. Integer arithmetic keeps the rank
/// exact. Throws EmptyInputError, and std::invalid_argument for percent > 100.
double nearest_rank(std::span<const double> sorted, unsigned percent);

/// Per-hour spread of cell values. Throws EmptyInputError.
HourlyDistribution hourly_distribution(std::span<const CellDemandSeries> cells);

struct RankedCell
{
    std::string cell_id;
    double kwh;

    friend bool operator==(const RankedCell&, const RankedCell&) = default;
};

/// The `n` largest cell values at `hour`, descending, equal values by
/// ascending id. Throws std::out_of_range for hour > 23 and
/// std::invalid_argument for n == 0.
std::vector<RankedCell> top_cells(std::span<const CellDemandSeries> cells, std::size_t hour,
                                  std::size_t n);

/// 100 * peak / baseline, in percent.
double relative_increase(double peak_gw, double baseline_gw);

} // namespace acload
