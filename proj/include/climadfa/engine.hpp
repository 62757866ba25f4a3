#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "climadfa/config.hpp"
#include "climadfa/surplus.hpp"

namespace climadfa {

//! Steps of the yearly cascade, in dependency order.
enum class Stage
{
    climate,
    hazards,
    macro,
    assets,
    liabilities,
    reinsurer,
    surplus
};

std::string_view to_string(Stage stage);

//! Called as each stage of a path completes; `year` is the calendar year
//! (the reference year for the climate stage, which covers the whole path).
using StageObserver = std::function<void(Stage stage, std::size_t scenario, std::size_t path, int year)>;

struct SimulationOptions
{
    std::size_t workers = 0;  //!< 0 uses the configured worker count
    StageObserver observer;   //!< invoked from worker threads
};

struct ScenarioResult
{
    std::string scenario_id;
    SurplusPaths paths;
    //! Per insurer; for configured starting capital base and capital coincide.
    std::vector<CapitalCalibration> initial_capital;
    std::size_t wipeout_paths = 0;  //!< paths where damaged consumption reached zero
};

struct SimulationResult
{
    std::vector<ScenarioResult> scenarios;
    RiskReport report;
};

/*!
 * Simulate every (scenario, path) unit and aggregate the risk report.
 *
 * Each unit draws only from streams derived from its own seed, and results
 * are written to per-unit slots, so output does not depend on the worker
 * count. A numeric failure aborts the run with a SimulationError naming the
 * scenario, path and year; when several units fail, the first in
 * (scenario, path) order is reported.
 */
SimulationResult run_simulation(RunConfig const& config, SimulationOptions const& options = {});

}  // namespace climadfa
