#pragma once

#include "acload/geo.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acload
{

/// Household archetypes. The declaration order is the canonical index order
/// for every matrix and vector in the library.
enum class DemographicGroup : std::size_t
{
    Families = 0,
    CouplesWithoutChildren,
    Retired,
    SharedFlats,
    Singles,
};

inline constexpr std::size_t kGroupCount = 5;

inline constexpr std::array<DemographicGroup, kGroupCount> kAllGroups = {
    DemographicGroup::Families, DemographicGroup::CouplesWithoutChildren,
    DemographicGroup::Retired, DemographicGroup::SharedFlats, DemographicGroup::Singles};

constexpr std::size_t index(DemographicGroup g) { return static_cast<std::size_t>(g); }

std::string_view group_name(DemographicGroup g);
std::optional<DemographicGroup> parse_group(std::string_view name);

/// Label of a household size bin: "1" .. "5", "6+".
std::string_view size_label(std::size_t size_index);

inline constexpr double kRowSumTolerance = 1e-9;

/// Row-stochastic mapping from household size (rows) to demographic group.
struct DistributionMatrix
{
    std::array<std::array<double, kGroupCount>, kHouseholdSizes> entries{};

    double operator()(std::size_t size_index, DemographicGroup g) const
    {
        return entries[size_index][index(g)];
    }

    friend bool operator==(const DistributionMatrix&, const DistributionMatrix&) = default;
};

struct MatrixIssue
{
    enum class Kind
    {
        RowNotStochastic,
        EntryOutOfRange,
    };

    Kind kind;
    std::size_t size_index;
    std::optional<DemographicGroup> group; // EntryOutOfRange only
    double value;                          // the row sum or the offending entry

    std::string message() const;
};

class MatrixError : public std::invalid_argument
{
  public:
    explicit MatrixError(std::vector<MatrixIssue> issues);
    const std::vector<MatrixIssue>& issues() const { return issues_; }

  private:
    std::vector<MatrixIssue> issues_;
};

/// Household composition by size, with the 5-person row (which sums to 99 %)
/// renormalized proportionally.
DistributionMatrix default_matrix();

/// Every problem found in `m`; empty means valid.
std::vector<MatrixIssue> validate_matrix(const DistributionMatrix& m);

/// Throws MatrixError unless validate_matrix(m) is empty.
void require_valid(const DistributionMatrix& m);

struct DemographicHouseholds
{
    std::string cell_id;
    std::array<double, kGroupCount> counts{};

    double operator[](DemographicGroup g) const { return counts[index(g)]; }
    double total() const;
};

/// Expected households per group: counts[d] = sum_s households[s] * m[s][d].
/// `m` must already be valid.
DemographicHouseholds distribute(const GridCell& cell, const DistributionMatrix& m);

} // namespace acload
