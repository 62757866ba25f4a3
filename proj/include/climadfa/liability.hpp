#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "climadfa/hazard.hpp"
#include "climadfa/loss_bank.hpp"
#include "climadfa/random.hpp"

namespace climadfa {

struct InsurerSpec
{
    std::string insurer_id;
    double market_share = 0.0;
    double xol_excess = 0.0;  //!< reference-year terms
    double xol_limit = 0.0;   //!< reference-year terms
    //! Starting capital; calibrated to the one-year insolvency target when unset.
    std::optional<double> initial_capital;
    //! Reference-year gross premium, CPI-indexed each year, replacing the
    //! loaded-moment premium when set.
    std::optional<double> fixed_premium;
};

struct NonCatParams
{
    bool enabled = true;
    double mu = 1.0;
    double dispersion = 1.0;
    double power = 1.5;
    double exposure_intercept = 0.0;
    double exposure_slope = 1.0;
};

struct ReinsuranceMarketParams
{
    double risk_loading = 0.55;
    double sensitivity = 1.0;
    double reference_solvency = 3.0;
    double initial_reinsurer_capital = 0.0;
};

void validate(InsurerSpec const& insurer);
void validate(NonCatParams const& params);
void validate(ReinsuranceMarketParams const& params);

struct CatSplit
{
    double net = 0.0;
    double recovery = 0.0;
};

//! Insurer's share of the market loss net of its aggregate XoL layer.
CatSplit net_cat_loss(double market_loss, InsurerSpec const& insurer, double indexed_excess, double indexed_limit);

//! One compound Poisson-Gamma (Tweedie) draw of the per-unit non-CAT loss.
double simulate_noncat_loss(NonCatParams const& params, RandomStream& rng);

//! Number of risks for a population; throws DomainError when not positive.
double noncat_exposure(double population, NonCatParams const& params);

double scaled_noncat_loss(double unit_loss,
                          double population,
                          NonCatParams const& params,
                          double insurer_share,
                          double cpi_ratio);

struct Moments
{
    double mean = 0.0;
    double var = 0.0;
};

//! Moments of scaled_noncat_loss: mean c mu and variance c^2 phi mu^p.
Moments noncat_premium_moments(double population, NonCatParams const& params, double insurer_share, double cpi_ratio);

//! Frequency/severity parameters of one hazard for every period of a year.
struct HazardYear
{
    std::vector<EventParams> periods;
    double sev_sigma = 1.0;
};

struct PremiumMoments
{
    double gross_mean = 0.0;
    double gross_var = 0.0;
    double layer_mean = 0.0;
    double layer_var = 0.0;
};

//! Analytic compound Poisson-LogNormal moments of share * total (normalised).
Moments analytic_cat_moments(std::span<HazardYear const> hazards, double share);

/*!
 * Grouping of hazard periods into layer-bank cells.
 *
 * Periods of one hazard that share a severity location collapse into one
 * cell with the summed rate; otherwise each period is its own cell.
 */
struct BankLayout
{
    struct Cell
    {
        std::size_t hazard = 0;
        int period = -1;  //!< -1 when the cell sums every period of the hazard
        double sigma = 1.0;
    };
    std::vector<Cell> cells;

    std::vector<double> sigmas() const;
    std::vector<EventParams> cell_params(std::span<HazardYear const> hazards) const;
};

//! Layout for a fixed set of models: annual and stationary-severity hazards
//! get one cell, monthly hazards with covariate severity get twelve.
BankLayout bank_layout(std::span<HazardModel const> models);
//! Layout inferred from one year of parameters.
BankLayout bank_layout(std::span<HazardYear const> hazards);

/*!
 * Premium moments for one insurer in normalised terms.
 *
 * Gross moments are analytic; layer moments come from `inner_samples`
 * aggregate losses drawn from a bank seeded by `rng`.
 */
PremiumMoments cat_premium_moments(std::span<HazardYear const> hazards,
                                   Layer const& layer,
                                   std::size_t inner_samples,
                                   RandomStream const& rng,
                                   std::size_t depth = 24);

//! Standard-deviation loaded premium for CAT plus non-CAT business.
double gross_premium(double cat_mean, double cat_var, double noncat_mean, double noncat_var, double loading);

//! Multiplier max(1, exp(-k1 (S - S0))).
double reinsurance_uplift(double prev_solvency, ReinsuranceMarketParams const& market);

double reinsurance_premium(double layer_mean,
                           double layer_var,
                           double loading,
                           double prev_solvency,
                           ReinsuranceMarketParams const& market);

struct ReinsurerStep
{
    double capital = 0.0;
    double solvency = 0.0;
};

//! (1 + r)(prev + premiums) - recoveries.
double reinsurer_capital(double prev_capital, double total_premiums, double total_recoveries, double investment_return);

//! Capital recursion and solvency ratio; throws DomainError when premiums
//! are not positive (the ratio is undefined).
ReinsurerStep step_reinsurer_capital(double prev_capital,
                                     double total_premiums,
                                     double total_recoveries,
                                     double investment_return);

}  // namespace climadfa
