#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "climadfa/assets.hpp"
#include "climadfa/climate.hpp"
#include "climadfa/hazard.hpp"
#include "climadfa/liability.hpp"
#include "climadfa/macro.hpp"
#include "climadfa/timeseries.hpp"

namespace climadfa {

//! One socio-economic pathway with its ensemble forecasts.
struct ScenarioSpec
{
    std::string scenario_id;
    TimeSeries gdp;                //!< real GDP
    TimeSeries potential_growth;   //!< rate per year
    TimeSeries population;
    TimeSeries brown_production;
    Ensemble ensemble;
};

struct PremiumSettings
{
    double risk_loading = 0.55;
    bool use_prior_year_covariates = false;
    std::size_t inner_samples = 10000;
    std::size_t layer_bank_depth = 24;
};

struct CapitalSettings
{
    double target_ratio = 1.75;
    std::size_t calibration_draws = 10000;
};

struct RunConfig
{
    std::uint64_t master_seed = 0;
    std::size_t n_paths = 10000;
    int start_year = 2024;  //!< reference year t = 0
    int end_year = 2060;
    std::size_t workers = 1;
    std::vector<int> cagr_horizons{5, 10, 20, 30};

    std::vector<ScenarioSpec> scenarios;
    std::vector<HazardModel> hazards;

    InflationParams inflation;
    double initial_inflation = 0.0517;
    std::string temperature_variable = "t_surface";

    RateParams real_rate;
    double initial_real_resid = -0.0005;

    EquityParams equity;
    PortfolioParams portfolio;
    double uninsured_ratio = 1.22;

    std::vector<InsurerSpec> market;
    NonCatParams noncat;
    PremiumSettings premium;
    ReinsuranceMarketParams reinsurance;
    CapitalSettings capital;

    //! FNV-1a hash of the configuration text, recorded in the run manifest.
    std::uint64_t config_hash = 0;

    std::size_t horizon() const { return static_cast<std::size_t>(end_year - start_year); }
    //! Whether the climate inflation overlay has any non-zero coefficient.
    bool overlay_enabled() const;
    //! Climate variables every path must carry.
    std::vector<std::string> required_variables() const;
};

//! Throws ValidationError describing the first violated invariant.
void validate(RunConfig const& config);

/*!
 * Load a YAML run configuration.
 *
 * Relative data directories resolve against the configuration file's
 * directory. Scenario CSVs are read and interpolated to annual values.
 * `only_scenario` keeps a single scenario by id.
 */
RunConfig load_run_config(std::filesystem::path const& path,
                          std::optional<std::string> const& only_scenario = std::nullopt);

//! Same, from YAML text; `base_dir` resolves relative data directories.
RunConfig parse_run_config(std::string const& text,
                           std::filesystem::path const& base_dir,
                           std::optional<std::string> const& only_scenario = std::nullopt);

//! Scenario series and ensemble forecasts from a data directory.
ScenarioSpec load_scenario(std::string scenario_id,
                           std::filesystem::path const& data_dir,
                           Ensemble ensemble_template);

}  // namespace climadfa
