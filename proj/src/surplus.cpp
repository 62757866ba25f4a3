#include "climadfa/surplus.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "climadfa/errors.hpp"
#include "climadfa/stats.hpp"

namespace climadfa {

double step_insurer_surplus(double prev_capital, double premium_net_of_ri, double investment_return, double net_losses)
{
    return (1.0 + investment_return) * (prev_capital + premium_net_of_ri) - net_losses;
}

CapitalCalibration calibrate_initial_capital(std::function<OneYearDraw(std::size_t)> const& one_year_simulator,
                                             std::size_t n_calib,
                                             double target_ratio)
{
    if (n_calib < kMinCalibrationDraws)
        throw ValidationError(fmt::format("capital calibration needs at least {} draws, got {}",
                                          kMinCalibrationDraws, n_calib));
    std::vector<OneYearDraw> draws;
    draws.reserve(n_calib);
    for (std::size_t i = 0; i < n_calib; ++i)
        draws.push_back(one_year_simulator(i));
    return calibrate_initial_capital(draws, target_ratio);
}

CapitalCalibration calibrate_initial_capital(std::span<OneYearDraw const> draws, double target_ratio)
{
    if (draws.empty())
        throw ValidationError("capital calibration needs draws");
    std::vector<double> shortfall;
    shortfall.reserve(draws.size());
    for (auto const& d : draws)
    {
        if (!(1.0 + d.rate > 0.0))
            throw DomainError(fmt::format("investment return {} wipes out the asset base", d.rate));
        shortfall.push_back(d.losses / (1.0 + d.rate) - d.premium);
    }
    double const base = quantile(shortfall, 1.0 - kInsolvencyTarget);
    return {base, std::max(0.0, target_ratio * base)};
}

SurplusPaths::SurplusPaths(int start_year, std::size_t horizon, std::size_t n_paths)
    : start_year(start_year),
      horizon(horizon),
      n_paths(n_paths),
      capital(n_paths * (horizon + 1), 0.0),
      claims(n_paths * horizon, 0.0)
{
}

ScenarioReport compute_risk_report(std::string scenario, SurplusPaths const& paths, std::span<int const> horizons)
{
    if (paths.n_paths == 0)
        throw ValidationError("risk report needs at least one path");

    ScenarioReport report;
    report.scenario = std::move(scenario);
    auto const n = paths.n_paths;
    auto const dn = static_cast<double>(n);

    std::vector<double> column(n);
    std::vector<double> ratios;
    std::vector<double> means(paths.horizon + 1);
    for (std::size_t t = 0; t <= paths.horizon; ++t)
    {
        ratios.clear();
        std::size_t insolvent = 0;
        for (std::size_t p = 0; p < n; ++p)
        {
            double const k = paths.capital_at(p, t);
            column[p] = k;
            if (t > 0 && k <= 0.0)
            {
                ++insolvent;
                double const claims = paths.claims_at(p, t);
                if (claims > 0.0)
                    ratios.push_back(-k / claims);
            }
        }
        std::sort(column.begin(), column.end());
        means[t] = ordered_sum(column) / dn;
        if (t == 0)
            continue;

        YearMetrics m;
        m.year = paths.start_year + static_cast<int>(t);
        m.expected_surplus = means[t];
        m.median_surplus = quantile_sorted(column, 0.5);
        m.insolvency_probability = static_cast<double>(insolvent) / dn;
        if (!ratios.empty())
            m.deficit_given_insolvency = ordered_sum(ratios) / static_cast<double>(ratios.size());
        m.n_paths = n;
        report.years.push_back(m);
    }

    for (int h : horizons)
    {
        CagrEntry entry;
        entry.horizon = h;
        entry.n_paths = n;
        if (h > 0 && static_cast<std::size_t>(h) <= paths.horizon)
        {
            double const k0 = means[0];
            double const kh = means[static_cast<std::size_t>(h)];
            if (k0 > 0.0 && kh > 0.0)
                entry.cagr = std::pow(kh / k0, 1.0 / h) - 1.0;
        }
        report.cagr.push_back(entry);
    }
    return report;
}

}  // namespace climadfa
