#include "climadfa/hazard.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "climadfa/errors.hpp"
#include "climadfa/stats.hpp"

namespace climadfa {

namespace {

constexpr std::array<std::pair<HazardId, std::string_view>, 6> kHazardNames{{
    {HazardId::flood, "flood"},
    {HazardId::bushfire, "bushfire"},
    {HazardId::tropical_cyclone, "tropical_cyclone"},
    {HazardId::storm, "storm"},
    {HazardId::east_coast_low, "east_coast_low"},
    {HazardId::hailstorm, "hailstorm"},
}};

}  // namespace

std::string_view to_string(HazardId id)
{
    for (auto const& [key, name] : kHazardNames)
    {
        if (key == id)
            return name;
    }
    return "unknown";
}

HazardId parse_hazard_id(std::string_view text)
{
    for (auto const& [key, name] : kHazardNames)
    {
        if (name == text)
            return key;
    }
    throw ValidationError(fmt::format("unknown hazard '{}'", text));
}

std::vector<std::string> HazardModel::covariates() const
{
    std::vector<std::string> out;
    for (auto const* list : {&freq_coeffs, &sev_coeffs})
    {
        for (auto const& c : *list)
        {
            if (std::find(out.begin(), out.end(), c.covariate) == out.end())
                out.push_back(c.covariate);
        }
    }
    return out;
}

void validate(HazardModel const& model)
{
    auto const name = to_string(model.id);
    if (!(model.sev_sigma > 0.0) || !std::isfinite(model.sev_sigma))
        throw ValidationError(fmt::format("hazard {}: severity sigma must be positive", name));
    // A -inf frequency intercept is the supported way to switch a hazard off.
    if (std::isnan(model.freq_intercept) || model.freq_intercept == HUGE_VAL)
        throw ValidationError(fmt::format("hazard {}: invalid frequency intercept", name));
    if (!std::isfinite(model.sev_intercept))
        throw ValidationError(fmt::format("hazard {}: severity intercept must be finite", name));
    for (auto const* list : {&model.freq_coeffs, &model.sev_coeffs})
    {
        for (auto const& c : *list)
        {
            if (!std::isfinite(c.value))
                throw ValidationError(fmt::format("hazard {}: coefficient on {} must be finite", name, c.covariate));
        }
    }
}

EventParams hazard_event_params(HazardModel const& model,
                                std::map<std::string, double, std::less<>> const& covariates)
{
    auto lookup = [&](std::string const& covariate) {
        auto it = covariates.find(covariate);
        if (it == covariates.end())
            throw MissingCovariateError(
                fmt::format("hazard {} needs covariate '{}'", to_string(model.id), covariate));
        return it->second;
    };
    double eta = model.freq_intercept;
    for (auto const& c : model.freq_coeffs)
        eta += c.value * lookup(c.covariate);
    double location = model.sev_intercept;
    for (auto const& c : model.sev_coeffs)
        location += c.value * lookup(c.covariate);
    return {std::exp(eta), location};
}

EventParams hazard_event_params(HazardModel const& model,
                                ClimateTrajectory const& trajectory,
                                int year,
                                int month)
{
    auto value = [&](std::string const& covariate) {
        if (!trajectory.has(covariate))
            throw MissingCovariateError(
                fmt::format("hazard {} needs covariate '{}'", to_string(model.id), covariate));
        return trajectory.at(covariate, year, month);
    };
    double eta = model.freq_intercept;
    for (auto const& c : model.freq_coeffs)
        eta += c.value * value(c.covariate);
    double location = model.sev_intercept;
    for (auto const& c : model.sev_coeffs)
        location += c.value * value(c.covariate);
    return {std::exp(eta), location};
}

std::vector<EventParams> hazard_year_params(HazardModel const& model,
                                            ClimateTrajectory const& trajectory,
                                            int year)
{
    if (model.resolution == Resolution::annual)
        return {hazard_event_params(model, trajectory, year, 0)};
    std::vector<EventParams> out;
    out.reserve(12);
    for (int month = 1; month <= 12; ++month)
        out.push_back(hazard_event_params(model, trajectory, year, month));
    return out;
}

std::vector<double> simulate_period_losses(std::span<EventParams const> periods,
                                           double sev_sigma,
                                           RandomStream& rng)
{
    std::vector<double> losses;
    for (auto const& p : periods)
    {
        auto const count = rng.poisson(p.rate);
        for (std::uint64_t k = 0; k < count; ++k)
            losses.push_back(rng.lognormal(p.log_location, sev_sigma));
    }
    return losses;
}

std::vector<double> simulate_annual_hazard_losses(HazardModel const& model,
                                                  ClimateTrajectory const& trajectory,
                                                  int year,
                                                  RandomStream& rng)
{
    auto const periods = hazard_year_params(model, trajectory, year);
    return simulate_period_losses(periods, model.sev_sigma, rng);
}

double denormalize_loss(double normalised, double cpi_ratio, double gdp_ratio)
{
    if (!(cpi_ratio > 0.0) || !(gdp_ratio > 0.0))
        throw DomainError(fmt::format("loss index ratios must be positive (cpi {}, gdp {})", cpi_ratio, gdp_ratio));
    return normalised * cpi_ratio * gdp_ratio;
}

double normalize_loss(double nominal, double cpi_ratio, double gdp_ratio)
{
    if (!(cpi_ratio > 0.0) || !(gdp_ratio > 0.0))
        throw DomainError(fmt::format("loss index ratios must be positive (cpi {}, gdp {})", cpi_ratio, gdp_ratio));
    return nominal / (cpi_ratio * gdp_ratio);
}

double AnnualCatLosses::total_normalised() const
{
    std::vector<double> all;
    for (auto const& h : per_hazard_normalised)
        all.insert(all.end(), h.events.begin(), h.events.end());
    return ordered_sum(all);
}

}  // namespace climadfa
