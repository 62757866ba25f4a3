#include "climadfa/macro.hpp"

#include <cmath>

#include <fmt/format.h>

#include "climadfa/errors.hpp"

namespace climadfa {

void validate(InflationParams const& params)
{
    if (!(std::abs(params.ar_coeff) < 1.0))
        throw ValidationError(fmt::format("inflation AR coefficient {} must lie in (-1, 1)", params.ar_coeff));
    if (!(params.sigma >= 0.0))
        throw ValidationError("inflation sigma must be non-negative");
}

void validate(RateParams const& params)
{
    if (!(std::abs(params.resid_ar) < 1.0))
        throw ValidationError(fmt::format("real-rate AR coefficient {} must lie in (-1, 1)", params.resid_ar));
    if (!(params.resid_sigma >= 0.0))
        throw ValidationError("real-rate sigma must be non-negative");
}

InflationStep step_inflation(double prev, InflationParams const& params, double shock, double annual_overlay)
{
    double const base = params.long_run_mean + params.ar_coeff * (prev - params.long_run_mean) + params.sigma * shock;
    return {base, base + annual_overlay};
}

double monthly_inflation_overlay(int month_index,
                                 std::span<double const> temps,
                                 std::span<double const> baseline,
                                 InflationParams const& params)
{
    if (temps.size() < 12)
        throw ValidationError(fmt::format("inflation overlay needs 12 trailing months, got {}", temps.size()));
    if (baseline.size() != 12)
        throw ValidationError(fmt::format("baseline climatology needs 12 months, got {}", baseline.size()));
    if (month_index < 1 || month_index > 12)
        throw ValidationError(fmt::format("month index {} outside 1-12", month_index));

    double total = 0.0;
    for (std::size_t lag = 1; lag <= kOverlayLags; ++lag)
    {
        int const calendar = ((month_index - 1 - static_cast<int>(lag)) % 12 + 12) % 12;
        double const t = temps[lag];
        double const anomaly = t - baseline[static_cast<std::size_t>(calendar)];
        total += params.overlay_alpha[lag - 1] * anomaly + params.overlay_beta[lag - 1] * t * anomaly;
    }
    return total;
}

double annual_inflation_overlay(TimeSeries const& monthly_temps, int year, InflationParams const& params)
{
    if (monthly_temps.resolution() != Resolution::monthly)
        throw ValidationError("inflation overlay needs a monthly temperature series");
    if (!monthly_temps.covers(year - 1, year))
        throw ValidationError(fmt::format("temperature series does not cover {}-{}", year - 1, year));

    auto const& values = monthly_temps.values();
    auto const jan = static_cast<std::size_t>(year - monthly_temps.first_year()) * 12;
    std::array<double, 12> trailing{};
    double total = 0.0;
    for (std::size_t m = 0; m < 12; ++m)
    {
        for (std::size_t lag = 0; lag < 12; ++lag)
            trailing[lag] = values[jan + m - lag];
        total += monthly_inflation_overlay(static_cast<int>(m) + 1, trailing, params.baseline_monthly_temp, params);
    }
    return total;
}

RealRateStep step_real_rate(double growth, double prev_resid, RateParams const& params, double shock)
{
    double const resid = params.resid_mean + params.resid_ar * (prev_resid - params.resid_mean) + params.resid_sigma * shock;
    return {params.intercept + params.growth_sensitivity * growth + resid, resid};
}

double nominal_rate(double real_rate, double adjusted_inflation)
{
    return real_rate + adjusted_inflation;
}

}  // namespace climadfa
