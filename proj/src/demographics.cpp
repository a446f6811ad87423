#include "acload/demographics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace acload
{

namespace
{

constexpr std::array<std::string_view, kGroupCount> kGroupNames = {
    "Families", "CouplesWithoutChildren", "Retired", "SharedFlats", "Singles"};

constexpr std::array<std::string_view, kHouseholdSizes> kSizeLabels = {"1", "2", "3",
                                                                       "4", "5", "6+"};

std::string describe(const std::string& what, const std::vector<MatrixIssue>& issues)
{
    std::string out = what;
    for (const auto& issue : issues)
        out += "; " + issue.message();
    return out;
}

} // namespace

std::string_view group_name(DemographicGroup g) { return kGroupNames.at(index(g)); }

std::optional<DemographicGroup> parse_group(std::string_view name)
{
    for (auto g : kAllGroups)
        if (group_name(g) == name)
            return g;
    return std::nullopt;
}

std::string_view size_label(std::size_t size_index) { return kSizeLabels.at(size_index); }

std::string MatrixIssue::message() const
{
    std::ostringstream os;
    os.precision(17);
    if (kind == Kind::RowNotStochastic)
        os << "RowNotStochastic: row " << size_label(size_index) << " sums to " << value;
    else
        os << "EntryOutOfRange: row " << size_label(size_index) << ", column "
           << (group ? group_name(*group) : "?") << " = " << value;
    return os.str();
}

MatrixError::MatrixError(std::vector<MatrixIssue> issues)
    : std::invalid_argument(describe("invalid distribution matrix", issues))
    , issues_(std::move(issues))
{
}

DistributionMatrix default_matrix()
{
    // Percentages; columns in canonical group order.
    constexpr double table[kHouseholdSizes][kGroupCount] = {
        {0, 0, 35, 0, 65},
        {15, 47, 31, 7, 0},
        {89, 8, 0, 3, 0},
        {96, 3, 0, 1, 0},
        {96, 2, 0, 1, 0},
        {90, 6, 0, 4, 0},
    };

    DistributionMatrix m;
    for (std::size_t s = 0; s < kHouseholdSizes; ++s) {
        const double row_sum = std::accumulate(std::begin(table[s]), std::end(table[s]), 0.0);
        for (std::size_t d = 0; d < kGroupCount; ++d)
            m.entries[s][d] = table[s][d] / row_sum;
    }
    return m;
}

std::vector<MatrixIssue> validate_matrix(const DistributionMatrix& m)
{
    std::vector<MatrixIssue> issues;
    for (std::size_t s = 0; s < kHouseholdSizes; ++s) {
        double sum = 0.0;
        for (auto g : kAllGroups) {
            const double v = m(s, g);
            if (!(v >= 0.0 && v <= 1.0))
                issues.push_back({MatrixIssue::Kind::EntryOutOfRange, s, g, v});
            sum += v;
        }
        if (!(std::abs(sum - 1.0) <= kRowSumTolerance))
            issues.push_back({MatrixIssue::Kind::RowNotStochastic, s, std::nullopt, sum});
    }
    return issues;
}

void require_valid(const DistributionMatrix& m)
{
    auto issues = validate_matrix(m);
    if (!issues.empty())
        throw MatrixError(std::move(issues));
}

double DemographicHouseholds::total() const
{
    return std::accumulate(counts.begin(), counts.end(), 0.0);
}

DemographicHouseholds distribute(const GridCell& cell, const DistributionMatrix& m)
{
    DemographicHouseholds out{cell.id, {}};
    for (std::size_t d = 0; d < kGroupCount; ++d) {
        double acc = 0.0;
        for (std::size_t s = 0; s < kHouseholdSizes; ++s)
            acc += cell.households_by_size[s] * m.entries[s][d];
        out.counts[d] = acc;
    }
    return out;
}

} // namespace acload
