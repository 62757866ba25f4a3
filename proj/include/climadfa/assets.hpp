#pragma once

#include "climadfa/random.hpp"

namespace climadfa {

struct EquityParams
{
    double op_intercept = 0.0;
    double op_sensitivity = 3.824;
    double op_sigma = 0.083;
    double x_intercept = 0.0;
    double x_sensitivity = 0.047;
    double x_sigma = 0.103;
    double brown_sensitivity = 1.768;
};

struct PortfolioParams
{
    double risk_free_weight = 0.6;
    double brown_weight = 0.03;
};

void validate(EquityParams const& params);
void validate(PortfolioParams const& params);

struct Consumption
{
    double value = 0.0;
    bool wipeout = false;  //!< consumption at or below zero
};

//! GDP less the uninsured share of catastrophe damage.
Consumption consumption_after_damage(double gdp, double uninsured_ratio, double market_cat_loss);

//! Standard Normal shocks driving one year of equity returns.
struct EquityShocks
{
    double operating = 0.0;
    double excess = 0.0;
};

struct SectorReturns
{
    double operating_growth = 0.0;
    double brown_operating_growth = 0.0;
    double general = 0.0;
    double brown = 0.0;
};

//! Returns for given shocks; both sectors share the same shocks.
SectorReturns sector_returns(double nominal_rate,
                             double consumption_growth,
                             double brown_production_growth,
                             EquityParams const& params,
                             EquityShocks const& shocks);

//! Draws the shocks (operating first, then excess) and evaluates the returns.
SectorReturns simulate_sector_returns(double nominal_rate,
                                      double consumption_growth,
                                      double brown_production_growth,
                                      EquityParams const& params,
                                      RandomStream& rng);

double portfolio_return(double nominal_rate, double general_return, double brown_return, PortfolioParams const& params);

}  // namespace climadfa
