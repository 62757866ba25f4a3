#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace climadfa {

//! (1 + r)(prev + premium net of reinsurance) - net losses.
double step_insurer_surplus(double prev_capital, double premium_net_of_ri, double investment_return, double net_losses);

//! One simulated first year for a single insurer.
struct OneYearDraw
{
    double losses = 0.0;   //!< net CAT plus non-CAT losses
    double premium = 0.0;  //!< premium net of reinsurance
    double rate = 0.0;     //!< investment return
};

struct CapitalCalibration
{
    double base = 0.0;     //!< capital leaving a 0.5% chance of K1 <= 0
    double capital = 0.0;  //!< target_ratio * base, floored at zero
};

inline constexpr std::size_t kMinCalibrationDraws = 10000;
inline constexpr double kInsolvencyTarget = 0.005;

/*!
 * Initial capital from the one-year insolvency rule.
 *
 * K1 <= 0 exactly when K0 <= losses / (1 + r) - premium, so the base
 * capital is the 99.5% quantile of that quantity over the draws.
 */
CapitalCalibration calibrate_initial_capital(std::function<OneYearDraw(std::size_t)> const& one_year_simulator,
                                             std::size_t n_calib,
                                             double target_ratio);

//! Same rule on precomputed draws.
CapitalCalibration calibrate_initial_capital(std::span<OneYearDraw const> draws, double target_ratio);

//! Market capital and claims for every path of one scenario.
struct SurplusPaths
{
    int start_year = 0;       //!< year of t = 0
    std::size_t horizon = 0;  //!< projected years T
    std::size_t n_paths = 0;
    std::vector<double> capital;  //!< path-major, horizon + 1 values per path (t = 0..T)
    std::vector<double> claims;   //!< path-major, horizon values per path (t = 1..T)

    SurplusPaths() = default;
    SurplusPaths(int start_year, std::size_t horizon, std::size_t n_paths);

    double& capital_at(std::size_t path, std::size_t t) { return capital[path * (horizon + 1) + t]; }
    double capital_at(std::size_t path, std::size_t t) const { return capital[path * (horizon + 1) + t]; }
    double& claims_at(std::size_t path, std::size_t t) { return claims[path * horizon + t - 1]; }
    double claims_at(std::size_t path, std::size_t t) const { return claims[path * horizon + t - 1]; }
};

struct YearMetrics
{
    int year = 0;
    double expected_surplus = 0.0;
    double median_surplus = 0.0;
    double insolvency_probability = 0.0;
    std::optional<double> deficit_given_insolvency;
    std::size_t n_paths = 0;
};

struct CagrEntry
{
    int horizon = 0;
    std::optional<double> cagr;
    std::size_t n_paths = 0;
};

struct ScenarioReport
{
    std::string scenario;
    std::vector<YearMetrics> years;  //!< t = 1..T
    std::vector<CagrEntry> cagr;
};

struct RiskReport
{
    std::vector<ScenarioReport> scenarios;
};

/*!
 * Per-year surplus statistics of one scenario.
 *
 * Sums run over sorted values, so the result does not depend on path order.
 * The deficit ratio averages -K/L over paths with K <= 0 and positive
 * claims and is absent when there are none. CAGR uses the mean capital at
 * t = 0 and t = horizon and is absent when either is not positive or the
 * horizon exceeds the projection.
 */
ScenarioReport compute_risk_report(std::string scenario, SurplusPaths const& paths, std::span<int const> horizons);

}  // namespace climadfa
