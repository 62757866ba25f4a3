#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace climadfa {

//! One line of the calibration output table.
struct CalibrationRow
{
    std::string model;
    std::string parameter;
    double estimate = 0.0;
    std::optional<double> std_err;
    std::optional<double> aic;
    std::optional<double> bic;
    std::size_t n = 0;
};

/*!
 * Run the fits listed under `jobs:` in a YAML file against CSVs in
 * `data_dir`. Supported job types: poisson_glm, lognormal_severity, ar1,
 * ols, quantile_map, tweedie_dispersion.
 */
std::vector<CalibrationRow> run_calibration_jobs(std::filesystem::path const& config,
                                                 std::filesystem::path const& data_dir);

//! `model,parameter,estimate,std_err,aic,bic,n` with NA for absent values.
std::string format_calibration(std::vector<CalibrationRow> const& rows);

}  // namespace climadfa
