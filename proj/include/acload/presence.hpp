#pragma once

#include "acload/demographics.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace acload
{

inline constexpr std::size_t kHoursPerDay = 24;

/// At-home probability per demographic group and local hour: the chance that
/// at least one household member is home.
struct PresenceProfile
{
    std::array<std::array<double, kHoursPerDay>, kGroupCount> entries{};

    friend bool operator==(const PresenceProfile&, const PresenceProfile&) = default;
};

class PresenceError : public std::runtime_error
{
  public:
    enum class Kind
    {
        MissingGroup,
        MissingHour,
        ValueOutOfRange,
        Malformed,
    };

    PresenceError(Kind kind, std::string message, std::size_t line = 0,
                  std::optional<std::size_t> hour = std::nullopt);

    Kind kind() const { return kind_; }
    std::string_view kind_name() const;
    /// 1-based line in the source; 0 when not tied to a line.
    std::size_t line() const { return line_; }
    std::optional<std::size_t> hour() const { return hour_; }

  private:
    Kind kind_;
    std::size_t line_;
    std::optional<std::size_t> hour_;
};

/// Working-day presence defaults. Stand-ins, not survey data.
PresenceProfile default_profiles();

/// Reads CSV `group,h0,...,h23` with exactly one row per group. The result
/// replaces the defaults entirely.
PresenceProfile load_profiles(std::istream& in);
void write_profiles(std::ostream& out, const PresenceProfile& p);

/// Throws std::out_of_range when hour > 23.
double presence(const PresenceProfile& p, DemographicGroup g, std::size_t hour);

} // namespace acload
