#include "climadfa/assets.hpp"

#include <cmath>

#include "climadfa/errors.hpp"

namespace climadfa {

void validate(EquityParams const& params)
{
    if (!(params.op_sigma >= 0.0) || !(params.x_sigma >= 0.0))
        throw ValidationError("equity sigmas must be non-negative");
}

void validate(PortfolioParams const& params)
{
    double const wf = params.risk_free_weight;
    double const wb = params.brown_weight;
    if (!(wf >= 0.0 && wf <= 1.0))
        throw ValidationError("risk-free weight must lie in [0, 1]");
    if (!(wb >= 0.0 && wb <= 1.0 - wf + 1e-12))
        throw ValidationError("brown weight must lie in [0, 1 - risk-free weight]");
}

Consumption consumption_after_damage(double gdp, double uninsured_ratio, double market_cat_loss)
{
    double const c = gdp - uninsured_ratio * market_cat_loss;
    return {c, !(c > 0.0)};
}

SectorReturns sector_returns(double nominal_rate,
                             double consumption_growth,
                             double brown_production_growth,
                             EquityParams const& params,
                             EquityShocks const& shocks)
{
    SectorReturns out;
    out.operating_growth = params.op_intercept + params.op_sensitivity * consumption_growth
                           + params.op_sigma * shocks.operating;
    out.brown_operating_growth = out.operating_growth + params.brown_sensitivity * brown_production_growth;
    double const noise = params.x_sigma * shocks.excess;
    double const x = params.x_intercept + params.x_sensitivity * out.operating_growth + noise;
    double const x_brown = params.x_intercept + params.x_sensitivity * out.brown_operating_growth + noise;
    out.general = nominal_rate + x;
    out.brown = nominal_rate + x_brown;
    return out;
}

SectorReturns simulate_sector_returns(double nominal_rate,
                                      double consumption_growth,
                                      double brown_production_growth,
                                      EquityParams const& params,
                                      RandomStream& rng)
{
    EquityShocks shocks;
    shocks.operating = rng.normal();
    shocks.excess = rng.normal();
    return sector_returns(nominal_rate, consumption_growth, brown_production_growth, params, shocks);
}

double portfolio_return(double nominal_rate, double general_return, double brown_return, PortfolioParams const& params)
{
    double const wf = params.risk_free_weight;
    double const wb = params.brown_weight;
    return wf * nominal_rate + (1.0 - wf - wb) * general_return + wb * brown_return;
}

}  // namespace climadfa
