#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "climadfa/climate.hpp"
#include "climadfa/random.hpp"
#include "climadfa/timeseries.hpp"

namespace climadfa {

enum class HazardId
{
    flood,
    bushfire,
    tropical_cyclone,
    storm,
    east_coast_low,
    hailstorm
};

std::string_view to_string(HazardId id);
HazardId parse_hazard_id(std::string_view text);

struct Coefficient
{
    std::string covariate;
    double value = 0.0;
};

//! Poisson frequency and LogNormal severity regressions for one hazard.
struct HazardModel
{
    HazardId id = HazardId::flood;
    Resolution resolution = Resolution::annual;
    double freq_intercept = 0.0;
    std::vector<Coefficient> freq_coeffs;
    double sev_intercept = 0.0;
    std::vector<Coefficient> sev_coeffs;  //!< empty for stationary severity
    double sev_sigma = 1.0;

    bool stationary_severity() const { return sev_coeffs.empty(); }
    //! Every covariate named by either regression, without duplicates.
    std::vector<std::string> covariates() const;
};

//! Throws ValidationError when sev_sigma is not positive or values are not finite.
void validate(HazardModel const& model);

//! Poisson rate per model period and log-scale severity location.
struct EventParams
{
    double rate = 0.0;
    double log_location = 0.0;
};

//! Rate = exp(intercept + beta'theta), location = intercept + alpha'theta.
//! Throws MissingCovariateError naming the hazard and covariate.
EventParams hazard_event_params(HazardModel const& model,
                                std::map<std::string, double, std::less<>> const& covariates);

//! Parameters for one period of a trajectory (month 0 for annual models).
EventParams hazard_event_params(HazardModel const& model,
                                ClimateTrajectory const& trajectory,
                                int year,
                                int month);

//! One entry per model period of the year: 1 for annual, 12 for monthly.
std::vector<EventParams> hazard_year_params(HazardModel const& model,
                                            ClimateTrajectory const& trajectory,
                                            int year);

//! Event losses for a sequence of periods with a shared log-scale sigma.
std::vector<double> simulate_period_losses(std::span<EventParams const> periods,
                                           double sev_sigma,
                                           RandomStream& rng);

//! Normalised (reference-year) event losses of one hazard in one year.
std::vector<double> simulate_annual_hazard_losses(HazardModel const& model,
                                                  ClimateTrajectory const& trajectory,
                                                  int year,
                                                  RandomStream& rng);

//! Normalised loss in nominal terms of the loss year. Throws DomainError
//! unless both ratios are positive.
double denormalize_loss(double normalised, double cpi_ratio, double gdp_ratio);
//! Inverse of denormalize_loss.
double normalize_loss(double nominal, double cpi_ratio, double gdp_ratio);

struct HazardLosses
{
    HazardId hazard = HazardId::flood;
    std::vector<double> events;  //!< normalised event losses
};

struct AnnualCatLosses
{
    int year = 0;
    std::vector<HazardLosses> per_hazard_normalised;
    double market_total_nominal = 0.0;

    double total_normalised() const;
};

}  // namespace climadfa
