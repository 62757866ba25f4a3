#include "climadfa/liability.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "climadfa/errors.hpp"

namespace climadfa {

void validate(InsurerSpec const& insurer)
{
    if (!(insurer.market_share > 0.0 && insurer.market_share <= 1.0))
        throw ValidationError(fmt::format("insurer {}: market share must lie in (0, 1]", insurer.insurer_id));
    if (!(insurer.xol_excess >= 0.0) || !(insurer.xol_limit >= 0.0))
        throw ValidationError(fmt::format("insurer {}: excess and limit must be non-negative", insurer.insurer_id));
    if (insurer.fixed_premium && !(*insurer.fixed_premium >= 0.0))
        throw ValidationError(fmt::format("insurer {}: fixed premium must be non-negative", insurer.insurer_id));
    if (insurer.initial_capital && !std::isfinite(*insurer.initial_capital))
        throw ValidationError(fmt::format("insurer {}: initial capital must be finite", insurer.insurer_id));
}

void validate(NonCatParams const& params)
{
    if (!params.enabled)
        return;
    if (!(params.mu > 0.0))
        throw ValidationError("non-CAT mu must be positive");
    if (!(params.dispersion >= 0.0))
        throw ValidationError("non-CAT dispersion must be non-negative");
    if (!(params.power > 1.0 && params.power < 2.0))
        throw ValidationError("non-CAT Tweedie power must lie in (1, 2)");
}

void validate(ReinsuranceMarketParams const& params)
{
    if (!(params.risk_loading >= 0.0))
        throw ValidationError("risk loading must be non-negative");
    if (!(params.sensitivity >= 0.0))
        throw ValidationError("reinsurance sensitivity must be non-negative");
    if (!(params.reference_solvency > 0.0))
        throw ValidationError("reference solvency must be positive");
}

CatSplit net_cat_loss(double market_loss, InsurerSpec const& insurer, double indexed_excess, double indexed_limit)
{
    double const gross = insurer.market_share * market_loss;
    double const recovery = std::min(std::max(gross - indexed_excess, 0.0), indexed_limit);
    return {gross - recovery, recovery};
}

double simulate_noncat_loss(NonCatParams const& params, RandomStream& rng)
{
    double const p = params.power;
    if (params.dispersion == 0.0)
        return params.mu;
    double const rate = std::pow(params.mu, 2.0 - p) / (params.dispersion * (2.0 - p));
    double const shape = (2.0 - p) / (p - 1.0);
    double const scale = params.dispersion * (p - 1.0) * std::pow(params.mu, p - 1.0);
    auto const count = rng.poisson(rate);
    if (count == 0)
        return 0.0;
    // A sum of `count` iid Gamma(shape) jumps is Gamma(count * shape).
    return rng.gamma(static_cast<double>(count) * shape, scale);
}

double noncat_exposure(double population, NonCatParams const& params)
{
    double const exposure = params.exposure_intercept + params.exposure_slope * population;
    if (!(exposure > 0.0))
        throw DomainError(fmt::format("non-CAT exposure {} is not positive", exposure));
    return exposure;
}

double scaled_noncat_loss(double unit_loss,
                          double population,
                          NonCatParams const& params,
                          double insurer_share,
                          double cpi_ratio)
{
    return unit_loss * noncat_exposure(population, params) * insurer_share * cpi_ratio;
}

Moments noncat_premium_moments(double population, NonCatParams const& params, double insurer_share, double cpi_ratio)
{
    if (!params.enabled)
        return {};
    double const c = noncat_exposure(population, params) * insurer_share * cpi_ratio;
    return {c * params.mu, c * c * params.dispersion * std::pow(params.mu, params.power)};
}

Moments analytic_cat_moments(std::span<HazardYear const> hazards, double share)
{
    double mean = 0.0;
    double var = 0.0;
    for (auto const& h : hazards)
    {
        double const s2 = h.sev_sigma * h.sev_sigma;
        for (auto const& p : h.periods)
        {
            if (!(p.rate > 0.0))
                continue;
            mean += p.rate * std::exp(p.log_location + 0.5 * s2);
            var += p.rate * std::exp(2.0 * p.log_location + 2.0 * s2);
        }
    }
    return {share * mean, share * share * var};
}

std::vector<double> BankLayout::sigmas() const
{
    std::vector<double> out;
    out.reserve(cells.size());
    for (auto const& c : cells)
        out.push_back(c.sigma);
    return out;
}

std::vector<EventParams> BankLayout::cell_params(std::span<HazardYear const> hazards) const
{
    std::vector<EventParams> out;
    out.reserve(cells.size());
    for (auto const& cell : cells)
    {
        if (cell.hazard >= hazards.size())
            throw ValidationError("bank layout does not match the hazard set");
        auto const& periods = hazards[cell.hazard].periods;
        if (cell.period >= 0)
        {
            out.push_back(periods.at(static_cast<std::size_t>(cell.period)));
            continue;
        }
        EventParams merged;
        for (auto const& p : periods)
            merged.rate += p.rate;
        merged.log_location = periods.empty() ? 0.0 : periods.front().log_location;
        out.push_back(merged);
    }
    return out;
}

BankLayout bank_layout(std::span<HazardModel const> models)
{
    BankLayout layout;
    for (std::size_t h = 0; h < models.size(); ++h)
    {
        auto const& m = models[h];
        if (m.resolution == Resolution::annual || m.stationary_severity())
        {
            layout.cells.push_back({h, -1, m.sev_sigma});
            continue;
        }
        for (int month = 0; month < 12; ++month)
            layout.cells.push_back({h, month, m.sev_sigma});
    }
    return layout;
}

BankLayout bank_layout(std::span<HazardYear const> hazards)
{
    BankLayout layout;
    for (std::size_t h = 0; h < hazards.size(); ++h)
    {
        auto const& periods = hazards[h].periods;
        bool const shared = std::all_of(periods.begin(), periods.end(), [&](EventParams const& p) {
            return p.log_location == periods.front().log_location;
        });
        if (shared)
        {
            layout.cells.push_back({h, -1, hazards[h].sev_sigma});
            continue;
        }
        for (std::size_t k = 0; k < periods.size(); ++k)
            layout.cells.push_back({h, static_cast<int>(k), hazards[h].sev_sigma});
    }
    return layout;
}

PremiumMoments cat_premium_moments(std::span<HazardYear const> hazards,
                                   Layer const& layer,
                                   std::size_t inner_samples,
                                   RandomStream const& rng,
                                   std::size_t depth)
{
    if (inner_samples < 1000)
        throw ValidationError(fmt::format("inner_samples must be at least 1000, got {}", inner_samples));
    auto const gross = analytic_cat_moments(hazards, layer.share);
    auto const layout = bank_layout(hazards);
    LayerMomentBank const bank(layout.sigmas(), inner_samples, depth, rng.seed());
    auto const totals = bank.aggregate(layout.cell_params(hazards));
    auto const sample = layer_sample_moments(totals, layer);
    return {gross.mean, gross.var, sample.layer_mean, sample.layer_var};
}

double gross_premium(double cat_mean, double cat_var, double noncat_mean, double noncat_var, double loading)
{
    if (cat_var < 0.0 || noncat_var < 0.0)
        throw DomainError("premium variances must be non-negative");
    return (cat_mean + loading * std::sqrt(cat_var)) + (noncat_mean + loading * std::sqrt(noncat_var));
}

double reinsurance_uplift(double prev_solvency, ReinsuranceMarketParams const& market)
{
    return std::max(1.0, std::exp(-market.sensitivity * (prev_solvency - market.reference_solvency)));
}

double reinsurance_premium(double layer_mean,
                           double layer_var,
                           double loading,
                           double prev_solvency,
                           ReinsuranceMarketParams const& market)
{
    if (layer_var < 0.0)
        throw DomainError("layer variance must be non-negative");
    double const base = layer_mean + loading * std::sqrt(layer_var);
    return std::max(base, base * std::exp(-market.sensitivity * (prev_solvency - market.reference_solvency)));
}

double reinsurer_capital(double prev_capital, double total_premiums, double total_recoveries, double investment_return)
{
    return (1.0 + investment_return) * (prev_capital + total_premiums) - total_recoveries;
}

ReinsurerStep step_reinsurer_capital(double prev_capital,
                                     double total_premiums,
                                     double total_recoveries,
                                     double investment_return)
{
    if (!(total_premiums > 0.0))
        throw DomainError("reinsurer solvency ratio is undefined without premium income");
    double const capital = reinsurer_capital(prev_capital, total_premiums, total_recoveries, investment_return);
    return {capital, capital / total_premiums};
}

}  // namespace climadfa
