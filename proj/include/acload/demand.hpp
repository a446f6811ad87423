#pragma once

#include "acload/activation.hpp"
#include "acload/demographics.hpp"
#include "acload/presence.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acload
{

using HourlySeries = std::array<double, kHoursPerDay>;

struct ScenarioParams
{
    double p_max_kw = 2.1;
    /// Share of households running a (newly bought) unit.
    double eta = 0.16;
    double dt_hours = 1.0;

    void validate() const;

    /// eta * p_max * dt: the most one household can add in one step, in kWh.
    double per_household_cap_kwh() const { return eta * p_max_kw * dt_hours; }

    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// Local-time hourly temperatures of one station for the simulated day.
struct TemperatureSeries
{
    std::string station_id;
    HourlySeries temps_c{};
};

/// Expected additional energy of one cell per hour, in kWh.
struct CellDemandSeries
{
    std::string cell_id;
    HourlySeries kwh{};
};

struct NationalDemandSeries
{
    HourlySeries kwh{};
};

class DuplicateCellIdError : public std::invalid_argument
{
  public:
    explicit DuplicateCellIdError(const std::string& id)
        : std::invalid_argument("duplicate cell id: " + id), id_(id)
    {
    }
    const std::string& id() const { return id_; }

  private:
    std::string id_;
};

/// Hourly activation probabilities of a station's series.
HourlySeries activation_series(const ActivationParams& act, const TemperatureSeries& temps);

/// E[h] = sum_d counts[d] * presence[d][h] * p(T[h]) * p_max * dt * eta,
/// summed in canonical group order.
CellDemandSeries cell_demand(const DemographicHouseholds& demo, const PresenceProfile& profile,
                             const ActivationParams& act, const TemperatureSeries& temps,
                             const ScenarioParams& scen);

/// Same as cell_demand with the activation probabilities precomputed.
CellDemandSeries cell_demand(const DemographicHouseholds& demo, const PresenceProfile& profile,
                             const HourlySeries& activation, const ScenarioParams& scen);

/// Hourly sums over all cells, accumulated in ascending cell-id order with
/// Neumaier compensation so the result does not depend on input order.
/// Throws DuplicateCellIdError.
NationalDemandSeries national_demand(std::span<const CellDemandSeries> cells);

struct Peak
{
    std::size_t hour;
    double value;
};

/// Largest hourly value; the earliest hour wins ties.
Peak peak(const HourlySeries& series);
inline Peak peak(const NationalDemandSeries& s) { return peak(s.kwh); }

/// Running sum with Neumaier's error compensation.
class CompensatedSum
{
  public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace acload
