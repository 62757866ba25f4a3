#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "climadfa/random.hpp"
#include "climadfa/timeseries.hpp"

namespace climadfa {

//! Affine bias correction of a raw model value plus the residual noise scale.
struct BiasCorrection
{
    double intercept = 0.0;
    double slope = 1.0;
    double noise_sigma = 0.0;  //!< standard deviation of the residual noise
};

//! One variable supplied by an ensemble member: raw forecast and correction.
struct MemberVariable
{
    std::string name;
    BiasCorrection correction;
    TimeSeries forecast;
};

struct EnsembleMember
{
    std::string model_id;
    std::vector<MemberVariable> variables;

    MemberVariable const* find(std::string_view variable) const;
};

struct Ensemble
{
    std::vector<EnsembleMember> members;
    //! Member supplying variables that the drawn member lacks.
    std::optional<std::string> fallback_member;

    EnsembleMember const* find(std::string_view model_id) const;
};

double apply_bias_correction(double raw, BiasCorrection const& correction);

//! One simulated path of climate covariates over a range of years.
class ClimateTrajectory
{
  public:
    ClimateTrajectory() = default;
    ClimateTrajectory(std::string member_id, int first_year, int last_year);

    std::string const& member_id() const { return member_id_; }
    int first_year() const { return first_year_; }
    int last_year() const { return last_year_; }

    void set(std::string name, TimeSeries series);
    bool has(std::string_view name) const;
    //! Throws MissingVariableError naming the variable when absent.
    TimeSeries const& series(std::string_view name) const;

    //! Annual value (mean of months for monthly variables).
    double annual(std::string_view name, int year) const;
    //! Monthly value (the year's value for annual variables).
    double monthly(std::string_view name, int year, int month) const;
    //! Monthly value when month is in [1, 12], annual value when month is 0.
    double at(std::string_view name, int year, int month) const;

    std::vector<std::string> names() const;

  private:
    std::string member_id_;
    int first_year_ = 0;
    int last_year_ = -1;
    std::vector<std::pair<std::string, TimeSeries>> series_;
};

/*!
 * Draw one trajectory.
 *
 * A single member is chosen uniformly for the whole path; each requested
 * variable is the corrected forecast plus iid Normal noise, with one
 * sub-stream per variable so the draw order does not matter. Variables the
 * member lacks come from the fallback member when configured.
 */
ClimateTrajectory simulate_climate_path(Ensemble const& ensemble,
                                        std::span<std::string const> variables,
                                        int first_year,
                                        int last_year,
                                        RandomStream const& rng);

}  // namespace climadfa
