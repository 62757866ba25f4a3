#pragma once

#include <array>
#include <span>
#include <vector>

#include "climadfa/timeseries.hpp"

namespace climadfa {

inline constexpr std::size_t kOverlayLags = 11;

struct InflationParams
{
    double long_run_mean = 0.0517;
    double ar_coeff = 0.713;
    double sigma = 0.0309;
    //! overlay_alpha[L - 1] multiplies the temperature anomaly at lag L.
    std::array<double, kOverlayLags> overlay_alpha{};
    //! overlay_beta[L - 1] multiplies temperature times anomaly at lag L.
    std::array<double, kOverlayLags> overlay_beta{};
    //! Monthly climatology, January first.
    std::array<double, 12> baseline_monthly_temp{};
};

struct RateParams
{
    double intercept = 0.0;
    double growth_sensitivity = 2.206;
    double resid_mean = -0.0005;
    double resid_ar = 0.478;
    double resid_sigma = 0.025;
};

void validate(InflationParams const& params);
void validate(RateParams const& params);

struct InflationStep
{
    double base = 0.0;
    double adjusted = 0.0;
};

//! AR(1) base inflation plus the climate overlay for the year.
InflationStep step_inflation(double prev, InflationParams const& params, double shock, double annual_overlay);

/*!
 * Climate impact on inflation in one month.
 *
 * `month_index` is the calendar month (1-12) of the month m being evaluated
 * and temps[L] is the temperature of month m - L, so temps[0] is month m
 * itself. Lags 1..11 enter the sum; anomalies are taken against the
 * baseline climatology of each lagged calendar month. Throws ValidationError
 * when fewer than 12 temperatures are supplied.
 */
double monthly_inflation_overlay(int month_index,
                                 std::span<double const> temps,
                                 std::span<double const> baseline,
                                 InflationParams const& params);

//! Sum of the twelve monthly overlays of `year`. The series must also cover
//! the eleven months before January of that year.
double annual_inflation_overlay(TimeSeries const& monthly_temps, int year, InflationParams const& params);

struct RealRateStep
{
    double real_rate = 0.0;
    double resid = 0.0;
};

RealRateStep step_real_rate(double growth, double prev_resid, RateParams const& params, double shock);

//! Fisher relation in additive form.
double nominal_rate(double real_rate, double adjusted_inflation);

//! Per-year macro path; index 0 is the reference year.
struct EconPath
{
    std::vector<double> base_inflation;
    std::vector<double> climate_inflation_impact;
    std::vector<double> climate_adjusted_inflation;
    std::vector<double> real_rate;
    std::vector<double> nominal_rate;
    std::vector<double> cpi_index;
};

}  // namespace climadfa
