#pragma once

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "climadfa/config.hpp"

namespace climadfa::testing {

inline std::filesystem::path source_dir()
{
    return CLIMADFA_SOURCE_DIR;
}

inline TimeSeries constant_series(Resolution resolution, double value, int first, int last)
{
    std::size_t const per_year = resolution == Resolution::monthly ? 12 : 1;
    return TimeSeries(resolution, first, std::vector<double>(static_cast<std::size_t>(last - first + 1) * per_year, value));
}

inline MemberVariable member_variable(std::string name, Resolution resolution, double raw, BiasCorrection correction,
                                      int first, int last)
{
    return {std::move(name), correction, constant_series(resolution, raw, first, last)};
}

//! Flat socio-economic paths and a single noise-free member.
inline ScenarioSpec flat_scenario(std::string id, int first, int last)
{
    ScenarioSpec s;
    s.scenario_id = std::move(id);
    s.gdp = constant_series(Resolution::annual, 1.0e6, first, last);
    s.potential_growth = constant_series(Resolution::annual, 0.02, first, last);
    s.population = constant_series(Resolution::annual, 2.0e7, first, last);
    s.brown_production = constant_series(Resolution::annual, 100.0, first, last);
    EnsembleMember m;
    m.model_id = "flat";
    m.variables.push_back(member_variable("rx5day", Resolution::annual, 80.0, {}, first, last));
    m.variables.push_back(member_variable("sst", Resolution::monthly, 25.0, {}, first, last));
    m.variables.push_back(member_variable("t_surface", Resolution::monthly, 22.0, {}, first, last));
    s.ensemble.members.push_back(std::move(m));
    return s;
}

inline HazardModel flood_model()
{
    HazardModel h;
    h.id = HazardId::flood;
    h.resolution = Resolution::annual;
    h.freq_intercept = -3.714;
    h.freq_coeffs = {{"rx5day", 0.037}};
    h.sev_intercept = 2.55;
    h.sev_coeffs = {{"rx5day", 0.035}};
    h.sev_sigma = 1.5;
    return h;
}

inline HazardModel storm_model()
{
    HazardModel h;
    h.id = HazardId::storm;
    h.resolution = Resolution::monthly;
    h.freq_intercept = -11.573;
    h.freq_coeffs = {{"sst", 0.348}};
    h.sev_intercept = -0.965;
    h.sev_coeffs = {{"sst", 0.239}};
    h.sev_sigma = 1.2;
    return h;
}

//! Small but complete market: fast enough for unit tests.
inline RunConfig small_config(std::size_t paths = 50)
{
    RunConfig c;
    c.master_seed = 7;
    c.n_paths = paths;
    c.start_year = 2020;
    c.end_year = 2030;
    c.cagr_horizons = {5, 10};
    c.scenarios.push_back(flat_scenario("flat", 2020, 2030));
    c.hazards = {flood_model(), storm_model()};
    c.real_rate.intercept = -0.038;
    c.equity.x_intercept = 0.036;
    c.market = {
        {"a", 0.5, 1000.0, 600.0, 20000.0, std::nullopt},
        {"b", 0.3, 600.0, 400.0, 12000.0, std::nullopt},
        {"c", 0.2, 400.0, 200.0, 8000.0, std::nullopt},
    };
    c.noncat = {true, 0.00185, 0.00011, 1.5, 0.0, 0.5};
    c.premium.inner_samples = 2000;
    c.reinsurance = {0.55, 1.0, 3.0, 2000.0};
    return c;
}

//! No catastrophes, no volatility, constant rate and premium.
inline RunConfig deterministic_config(double rate, double premium_per_insurer, double capital_per_insurer, int years)
{
    auto c = small_config(1);
    c.end_year = c.start_year + years;
    c.scenarios = {flat_scenario("flat", c.start_year, c.end_year)};
    for (auto& h : c.hazards)
        h.freq_intercept = -std::numeric_limits<double>::infinity();
    c.inflation.long_run_mean = 0.0;
    c.inflation.sigma = 0.0;
    c.initial_inflation = 0.0;
    c.real_rate = {rate, 0.0, 0.0, 0.0, 0.0};
    c.initial_real_resid = 0.0;
    c.equity = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    c.noncat.enabled = false;
    for (auto& insurer : c.market)
    {
        insurer.fixed_premium = premium_per_insurer;
        insurer.initial_capital = capital_per_insurer;
    }
    return c;
}

inline bool close_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace climadfa::testing
