#include "climadfa/climate.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "climadfa/errors.hpp"

namespace climadfa {

MemberVariable const* EnsembleMember::find(std::string_view variable) const
{
    for (auto const& v : variables)
    {
        if (v.name == variable)
            return &v;
    }
    return nullptr;
}

EnsembleMember const* Ensemble::find(std::string_view model_id) const
{
    for (auto const& m : members)
    {
        if (m.model_id == model_id)
            return &m;
    }
    return nullptr;
}

double apply_bias_correction(double raw, BiasCorrection const& correction)
{
    return correction.intercept + correction.slope * raw;
}

ClimateTrajectory::ClimateTrajectory(std::string member_id, int first_year, int last_year)
    : member_id_(std::move(member_id)), first_year_(first_year), last_year_(last_year)
{
}

void ClimateTrajectory::set(std::string name, TimeSeries series)
{
    for (auto& [key, value] : series_)
    {
        if (key == name)
        {
            value = std::move(series);
            return;
        }
    }
    series_.emplace_back(std::move(name), std::move(series));
}

bool ClimateTrajectory::has(std::string_view name) const
{
    return std::any_of(series_.begin(), series_.end(),
                       [&](auto const& entry) { return entry.first == name; });
}

TimeSeries const& ClimateTrajectory::series(std::string_view name) const
{
    for (auto const& [key, value] : series_)
    {
        if (key == name)
            return value;
    }
    throw MissingVariableError(fmt::format("climate variable '{}' is not in the trajectory", name));
}

double ClimateTrajectory::annual(std::string_view name, int year) const
{
    return series(name).annual(year);
}

double ClimateTrajectory::monthly(std::string_view name, int year, int month) const
{
    return series(name).monthly(year, month);
}

double ClimateTrajectory::at(std::string_view name, int year, int month) const
{
    return month == 0 ? annual(name, year) : monthly(name, year, month);
}

std::vector<std::string> ClimateTrajectory::names() const
{
    std::vector<std::string> out;
    for (auto const& entry : series_)
        out.push_back(entry.first);
    return out;
}

namespace {

MemberVariable const& resolve_variable(Ensemble const& ensemble,
                                       EnsembleMember const& member,
                                       std::string const& variable)
{
    if (auto const* v = member.find(variable))
        return *v;
    if (ensemble.fallback_member)
    {
        auto const* fallback = ensemble.find(*ensemble.fallback_member);
        if (fallback == nullptr)
            throw ValidationError(
                fmt::format("fallback member '{}' is not in the ensemble", *ensemble.fallback_member));
        if (auto const* v = fallback->find(variable))
            return *v;
        throw MissingVariableError(fmt::format(
            "climate variable '{}' is supplied neither by member '{}' nor by fallback '{}'",
            variable, member.model_id, fallback->model_id));
    }
    throw MissingVariableError(fmt::format(
        "climate variable '{}' is not supplied by member '{}' and no fallback member is configured",
        variable, member.model_id));
}

}  // namespace

ClimateTrajectory simulate_climate_path(Ensemble const& ensemble,
                                        std::span<std::string const> variables,
                                        int first_year,
                                        int last_year,
                                        RandomStream const& rng)
{
    if (ensemble.members.empty())
        throw ValidationError("climate ensemble is empty");

    auto pick = rng.substream("climate/member");
    auto const& member = ensemble.members[pick.index(ensemble.members.size())];

    ClimateTrajectory trajectory(member.model_id, first_year, last_year);
    for (auto const& name : variables)
    {
        auto const& source = resolve_variable(ensemble, member, name);
        auto const& forecast = source.forecast;
        if (!forecast.covers(first_year, last_year))
            throw ValidationError(fmt::format("forecast '{}' does not cover {}-{}", name, first_year, last_year));

        auto noise = rng.substream(fmt::format("climate/{}", name));
        double const sigma = source.correction.noise_sigma;
        std::size_t const per_year = forecast.resolution() == Resolution::monthly ? 12 : 1;
        std::size_t const offset = static_cast<std::size_t>(first_year - forecast.first_year()) * per_year;
        std::size_t const count = static_cast<std::size_t>(last_year - first_year + 1) * per_year;
        std::vector<double> values(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            double const corrected = apply_bias_correction(forecast.values()[offset + i], source.correction);
            values[i] = sigma > 0.0 ? corrected + sigma * noise.normal() : corrected;
        }
        trajectory.set(name, TimeSeries(forecast.resolution(), first_year, std::move(values)));
    }
    return trajectory;
}

}  // namespace climadfa
