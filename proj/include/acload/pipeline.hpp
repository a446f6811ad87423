#pragma once

#include "acload/demand.hpp"
#include "acload/geo.hpp"
#include "acload/ingest.hpp"
#include "acload/presence.hpp"
#include "acload/stats.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace acload
{

/// Raised when a result breaks a model invariant (negative or non-finite
/// demand, national total above the adoption cap).
class InvariantViolation : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

struct SimulationResult
{
    StationAssignment assignment{{}};
    /// Index-aligned with the input cells.
    std::vector<CellDemandSeries> cells;
    NationalDemandSeries national;
    HourlyDistribution distribution;
    Peak peak{0, 0.0};
    double total_households = 0.0;
};

/// Assigns stations, distributes households, evaluates expected demand for
/// every cell and aggregates. Output is identical for every `threads` value.
SimulationResult simulate(std::span<const GridCell> cells, const WeatherData& weather,
                          const RunConfig& config, const PresenceProfile& presence,
                          unsigned threads = 1);

/// Throws InvariantViolation if `result` is inconsistent with its inputs.
void check_invariants(const SimulationResult& result, const ScenarioParams& scenario);

} // namespace acload
