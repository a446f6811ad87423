#pragma once

#include <stdexcept>

namespace acload
{

/// Parameters of the discrete three-parameter Weibull activation curve.
///
/// `threshold_c` is the lowest outdoor temperature with a nonzero chance of
/// switching the unit on, `scale_c` non-dimensionalizes the excess
/// temperature and `shape` sets how sharply the probability rises. The
/// exponent is multiplied by `dt_hours / tau_c_hours`; with hourly steps and a
/// one-hour time constant the curve is the per-hour switch-on probability.
struct ActivationParams
{
    double threshold_c = 18.5;
    double scale_c = 3.5;
    double shape = 3.5;
    double dt_hours = 1.0;
    double tau_c_hours = 1.0;

    /// Throws std::invalid_argument naming the first bad field.
    void validate() const;

    friend bool operator==(const ActivationParams&, const ActivationParams&) = default;
};

/// 0 below the threshold, otherwise 1 - exp(-((T - u) / l)^k * dt / tau_c).
///
/// Mathematically the value stays below 1; in double precision it rounds to
/// exactly 1 once the exponent passes about 37.
double activation_probability(const ActivationParams& params, double temperature_c);

} // namespace acload
