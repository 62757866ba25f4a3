#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace climadfa {

struct NamedValue
{
    std::string name;
    double value = 0.0;
};

struct FitResult
{
    std::vector<NamedValue> coefficients;
    std::vector<NamedValue> standard_errors;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    std::size_t n_obs = 0;

    int iterations = 0;
    bool separation = false;      //!< Poisson GLM: a coefficient ran past +-30
    bool non_stationary = false;  //!< AR(1): |slope| >= 1
    std::vector<double> trace;    //!< Poisson GLM: log-likelihood per iteration

    //! Throws ValidationError when the name is unknown.
    double coefficient(std::string const& name) const;
    double standard_error(std::string const& name) const;
    std::size_t parameter_count() const { return coefficients.size(); }
};

//! Fill aic and bic from the log-likelihood, coefficient count and n.
void set_information_criteria(FitResult& fit);

//! Regressors plus their names; an intercept column is prepended by the
//! fitters, so `x` holds covariates only and may have zero columns.
struct Design
{
    Eigen::MatrixXd x;
    std::vector<std::string> names;

    static Design intercept_only(std::size_t n);
};

struct AffineMap
{
    double intercept = 0.0;
    double slope = 1.0;
};

//! Grid 0.01, 0.02, ..., 0.99.
std::vector<double> default_quantile_grid();

//! OLS of historical quantiles on backcast quantiles over the grid.
AffineMap fit_affine_quantile_map(std::span<double const> historical,
                                  std::span<double const> backcast,
                                  std::span<double const> quantile_grid);

//! ML scale of a mean-zero Normal on historical - corrected.
double fit_residual_sigma(std::span<double const> historical, std::span<double const> corrected_backcast);

struct GlmOptions
{
    int max_iterations = 100;
    double ll_tolerance = 1e-10;    //!< relative log-likelihood change
    double step_tolerance = 1e-11;  //!< max absolute coefficient step
    double separation_bound = 30.0;
};

//! Log-link Poisson regression by IRLS with step halving.
FitResult fit_poisson_glm(std::span<double const> counts,
                          Design const& design,
                          std::optional<std::span<double const>> offset = std::nullopt,
                          GlmOptions const& options = {});

//! Poisson log-likelihood of coefficients (intercept first).
double poisson_log_likelihood(std::span<double const> counts,
                              Design const& design,
                              Eigen::VectorXd const& beta,
                              std::optional<std::span<double const>> offset = std::nullopt);

//! OLS of log losses; "sigma" (ML, divisor n) is reported as a coefficient.
FitResult fit_lognormal_location(std::span<double const> losses, Design const& design);

//! Conditional least squares AR(1); coefficients "mean", "ar_coeff", "sigma".
FitResult fit_ar1(std::span<double const> series);

//! OLS with classical standard errors; "sigma" (ML) is reported as a coefficient.
FitResult fit_ols(std::span<double const> response, Design const& design);

//! Method-of-moments dispersion: sample variance / mu^p.
double fit_tweedie_dispersion(std::span<double const> losses, double mu, double power);

}  // namespace climadfa
