#include "acload/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace acload
{

void ScenarioParams::validate() const
{
    if (!(std::isfinite(p_max_kw) && p_max_kw > 0.0))
        throw std::invalid_argument("scenario.p_max_kw must be > 0, got " + std::to_string(p_max_kw));
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("scenario.eta must lie in [0, 1], got " + std::to_string(eta));
    if (!(std::isfinite(dt_hours) && dt_hours > 0.0))
        throw std::invalid_argument("scenario.dt_hours must be > 0, got " + std::to_string(dt_hours));
}

HourlySeries activation_series(const ActivationParams& act, const TemperatureSeries& temps)
{
    HourlySeries p{};
    for (std::size_t h = 0; h < kHoursPerDay; ++h)
        p[h] = activation_probability(act, temps.temps_c[h]);
    return p;
}

CellDemandSeries cell_demand(const DemographicHouseholds& demo, const PresenceProfile& profile,
                             const HourlySeries& activation, const ScenarioParams& scen)
{
    CellDemandSeries out{demo.cell_id, {}};
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        double e = 0.0;
        for (std::size_t d = 0; d < kGroupCount; ++d)
            e += demo.counts[d] * profile.entries[d][h] * activation[h] * scen.p_max_kw
                * scen.dt_hours * scen.eta;
        out.kwh[h] = e;
    }
    return out;
}

CellDemandSeries cell_demand(const DemographicHouseholds& demo, const PresenceProfile& profile,
                             const ActivationParams& act, const TemperatureSeries& temps,
                             const ScenarioParams& scen)
{
    return cell_demand(demo, profile, activation_series(act, temps), scen);
}

void CompensatedSum::add(double x)
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        compensation_ += (sum_ - t) + x;
    else
        compensation_ += (x - t) + sum_;
    sum_ = t;
}

NationalDemandSeries national_demand(std::span<const CellDemandSeries> cells)
{
    std::vector<const CellDemandSeries*> order(cells.size());
    std::transform(cells.begin(), cells.end(), order.begin(), [](const auto& c) { return &c; });
    std::sort(order.begin(), order.end(),
              [](const auto* a, const auto* b) { return a->cell_id < b->cell_id; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i]->cell_id == order[i - 1]->cell_id)
            throw DuplicateCellIdError(order[i]->cell_id);

    NationalDemandSeries out;
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        CompensatedSum sum;
        for (const auto* c : order)
            sum.add(c->kwh[h]);
        out.kwh[h] = sum.value();
    }
    return out;
}

Peak peak(const HourlySeries& series)
{
    Peak best{0, series[0]};
    for (std::size_t h = 1; h < series.size(); ++h)
        if (series[h] > best.value)
            best = {h, series[h]};
    return best;
}

} // namespace acload
