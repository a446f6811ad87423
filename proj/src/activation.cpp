#include "acload/activation.hpp"

#include <cmath>
#include <string>

namespace acload
{

namespace
{

void require_positive(double v, const char* name)
{
    if (!(std::isfinite(v) && v > 0.0))
        throw std::invalid_argument(std::string("activation.") + name + " must be > 0, got "
                                    + std::to_string(v));
}

} // namespace

void ActivationParams::validate() const
{
    if (!std::isfinite(threshold_c))
        throw std::invalid_argument("activation.u must be finite");
    require_positive(scale_c, "l");
    require_positive(shape, "k");
    require_positive(dt_hours, "dt");
    require_positive(tau_c_hours, "tau_c");
}

double activation_probability(const ActivationParams& params, double temperature_c)
{
    if (!(temperature_c >= params.threshold_c))
        return 0.0;
    const double excess = (temperature_c - params.threshold_c) / params.scale_c;
    const double exponent = std::pow(excess, params.shape) * (params.dt_hours / params.tau_c_hours);
    return -std::expm1(-exponent);
}

} // namespace acload
