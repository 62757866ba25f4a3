#include "climadfa/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "climadfa/errors.hpp"
#include "climadfa/stats.hpp"

namespace climadfa {

namespace {

constexpr double kRankThreshold = 1e-9;

double lookup(std::vector<NamedValue> const& values, std::string const& name)
{
    for (auto const& v : values)
    {
        if (v.name == name)
            return v.value;
    }
    throw ValidationError(fmt::format("fit has no parameter '{}'", name));
}

Eigen::MatrixXd with_intercept(Design const& design, std::size_t n)
{
    if (static_cast<std::size_t>(design.x.rows()) != n)
        throw ValidationError(fmt::format("design has {} rows for {} observations", design.x.rows(), n));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), design.x.cols() + 1);
    x.col(0).setOnes();
    if (design.x.cols() > 0)
        x.rightCols(design.x.cols()) = design.x;
    return x;
}

std::vector<std::string> parameter_names(Design const& design)
{
    std::vector<std::string> names{"intercept"};
    for (Eigen::Index j = 0; j < design.x.cols(); ++j)
    {
        auto const idx = static_cast<std::size_t>(j);
        names.push_back(idx < design.names.size() ? design.names[idx] : fmt::format("x{}", j + 1));
    }
    return names;
}

void require_full_rank(Eigen::MatrixXd const& x, std::string_view what)
{
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < x.cols())
        throw SingularDesignError(fmt::format("{}: design matrix is rank deficient (rank {} of {})",
                                              what, qr.rank(), x.cols()));
}

Eigen::VectorXd to_vector(std::span<double const> values)
{
    return Eigen::Map<Eigen::VectorXd const>(values.data(), static_cast<Eigen::Index>(values.size()));
}

struct OlsCore
{
    Eigen::VectorXd beta;
    Eigen::VectorXd se;
    double rss = 0.0;
};

OlsCore ols_core(Eigen::MatrixXd const& x, Eigen::VectorXd const& y, std::string_view what)
{
    auto const n = x.rows();
    auto const k = x.cols();
    if (n <= k)
        throw ValidationError(fmt::format("{}: need more observations ({}) than parameters ({})", what, n, k));
    require_full_rank(x, what);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    OlsCore out;
    out.beta = qr.solve(y);
    Eigen::VectorXd const resid = y - x * out.beta;
    out.rss = resid.squaredNorm();
    double const s2 = out.rss / static_cast<double>(n - k);
    Eigen::MatrixXd const xtx_inv = (x.transpose() * x).inverse();
    out.se = (s2 * xtx_inv.diagonal()).cwiseSqrt();
    return out;
}

double gaussian_log_likelihood(double rss, std::size_t n)
{
    double const dn = static_cast<double>(n);
    double const sigma2 = rss / dn;
    return -0.5 * dn * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
}

}  // namespace

double FitResult::coefficient(std::string const& name) const
{
    return lookup(coefficients, name);
}

double FitResult::standard_error(std::string const& name) const
{
    return lookup(standard_errors, name);
}

void set_information_criteria(FitResult& fit)
{
    auto const k = static_cast<double>(fit.coefficients.size());
    fit.aic = 2.0 * k - 2.0 * fit.log_likelihood;
    fit.bic = k * std::log(static_cast<double>(fit.n_obs)) - 2.0 * fit.log_likelihood;
}

Design Design::intercept_only(std::size_t n)
{
    return {Eigen::MatrixXd(static_cast<Eigen::Index>(n), 0), {}};
}

std::vector<double> default_quantile_grid()
{
    std::vector<double> grid;
    for (int q = 1; q <= 99; ++q)
        grid.push_back(q / 100.0);
    return grid;
}

AffineMap fit_affine_quantile_map(std::span<double const> historical,
                                  std::span<double const> backcast,
                                  std::span<double const> quantile_grid)
{
    if (historical.empty() || backcast.empty())
        throw ValidationError("quantile map needs non-empty series");
    if (quantile_grid.size() < 2)
        throw ValidationError("quantile map needs at least two grid points");
    for (double q : quantile_grid)
    {
        if (!(q > 0.0 && q < 1.0))
            throw ValidationError(fmt::format("quantile grid point {} outside (0, 1)", q));
    }

    std::vector<double> hist_sorted(historical.begin(), historical.end());
    std::vector<double> back_sorted(backcast.begin(), backcast.end());
    std::sort(hist_sorted.begin(), hist_sorted.end());
    std::sort(back_sorted.begin(), back_sorted.end());

    auto const m = quantile_grid.size();
    std::vector<double> hq(m), bq(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        hq[i] = quantile_sorted(hist_sorted, quantile_grid[i]);
        bq[i] = quantile_sorted(back_sorted, quantile_grid[i]);
    }
    double const bm = mean(bq);
    double const hm = mean(hq);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i)
    {
        sxx += (bq[i] - bm) * (bq[i] - bm);
        sxy += (bq[i] - bm) * (hq[i] - hm);
    }
    if (!(sxx > 0.0))
        throw SingularDesignError("quantile map: backcast quantiles are constant");
    double const slope = sxy / sxx;
    return {hm - slope * bm, slope};
}

double fit_residual_sigma(std::span<double const> historical, std::span<double const> corrected_backcast)
{
    if (historical.size() != corrected_backcast.size())
        throw ValidationError(fmt::format("residual sigma: series lengths differ ({} vs {})",
                                          historical.size(), corrected_backcast.size()));
    if (historical.empty())
        throw ValidationError("residual sigma: empty series");
    double ss = 0.0;
    for (std::size_t i = 0; i < historical.size(); ++i)
    {
        double const z = historical[i] - corrected_backcast[i];
        ss += z * z;
    }
    return std::sqrt(ss / static_cast<double>(historical.size()));
}

double poisson_log_likelihood(std::span<double const> counts,
                              Design const& design,
                              Eigen::VectorXd const& beta,
                              std::optional<std::span<double const>> offset)
{
    auto const x = with_intercept(design, counts.size());
    Eigen::VectorXd eta = x * beta;
    if (offset)
        eta += to_vector(*offset);
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
    {
        double const y = counts[static_cast<std::size_t>(i)];
        ll += y * eta[i] - std::exp(eta[i]) - std::lgamma(y + 1.0);
    }
    return ll;
}

FitResult fit_poisson_glm(std::span<double const> counts,
                          Design const& design,
                          std::optional<std::span<double const>> offset,
                          GlmOptions const& options)
{
    auto const n = counts.size();
    if (n == 0)
        throw ValidationError("Poisson GLM: no observations");
    for (double y : counts)
    {
        if (!(y >= 0.0) || y != std::floor(y))
            throw ValidationError(fmt::format("Poisson GLM: count {} is not a non-negative integer", y));
    }
    if (offset && offset->size() != n)
        throw ValidationError("Poisson GLM: offset length differs from counts");

    auto const x = with_intercept(design, n);
    require_full_rank(x, "Poisson GLM");
    auto const k = x.cols();
    Eigen::VectorXd const y = to_vector(counts);
    Eigen::VectorXd const off = offset ? to_vector(*offset) : Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));

    auto loglik = [&](Eigen::VectorXd const& b) {
        Eigen::VectorXd const eta = x * b + off;
        double ll = 0.0;
        for (Eigen::Index i = 0; i < eta.size(); ++i)
            ll += y[i] * eta[i] - std::exp(eta[i]) - std::lgamma(y[i] + 1.0);
        return ll;
    };
    auto wls = [&](Eigen::VectorXd const& w, Eigen::VectorXd const& z) {
        Eigen::VectorXd const sw = w.cwiseSqrt();
        Eigen::MatrixXd const xw = sw.asDiagonal() * x;
        return Eigen::VectorXd(xw.colPivHouseholderQr().solve(sw.cwiseProduct(z)));
    };

    // Start from the working response of mu = y + 0.5.
    Eigen::VectorXd beta;
    {
        Eigen::VectorXd const mu = (y.array() + 0.5).matrix();
        Eigen::VectorXd const z = mu.array().log().matrix() - off;
        beta = wls(mu, z);
    }

    FitResult fit;
    fit.n_obs = n;
    double ll = loglik(beta);
    fit.trace.push_back(ll);
    bool converged = false;
    for (int iter = 1; iter <= options.max_iterations; ++iter)
    {
        fit.iterations = iter;
        Eigen::VectorXd const eta = x * beta + off;
        Eigen::VectorXd const mu = eta.array().exp().matrix();
        Eigen::VectorXd const z = (eta - off).array() + (y - mu).array() / mu.array();
        Eigen::VectorXd step = wls(mu, z) - beta;

        double const slack = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(ll);
        double ll_new = loglik(beta + step);
        int halvings = 0;
        while (!(ll_new >= ll - slack) && halvings < 40)
        {
            step *= 0.5;
            ll_new = loglik(beta + step);
            ++halvings;
        }
        if (!(ll_new >= ll - slack))
        {
            step.setZero();
            ll_new = ll;
        }
        beta += step;
        double const change = std::abs(ll_new - ll) / std::max(std::abs(ll), 1e-300);
        ll = ll_new;
        fit.trace.push_back(ll);

        if (beta.cwiseAbs().maxCoeff() > options.separation_bound)
        {
            fit.separation = true;
            converged = true;
            break;
        }
        if (change < options.ll_tolerance && step.cwiseAbs().maxCoeff() < options.step_tolerance)
        {
            converged = true;
            break;
        }
    }
    if (!converged)
    {
        std::string trace;
        for (double v : fit.trace)
            trace += fmt::format(" {:.12g}", v);
        throw ConvergenceError(fmt::format("Poisson GLM did not converge in {} iterations; log-likelihood trace:{}",
                                           options.max_iterations, trace));
    }

    Eigen::VectorXd const mu = (x * beta + off).array().exp().matrix();
    Eigen::MatrixXd const info = x.transpose() * mu.asDiagonal() * x;
    Eigen::VectorXd const se = info.inverse().diagonal().cwiseMax(0.0).cwiseSqrt();
    auto const names = parameter_names(design);
    for (Eigen::Index j = 0; j < k; ++j)
    {
        auto const idx = static_cast<std::size_t>(j);
        fit.coefficients.push_back({names[idx], beta[j]});
        fit.standard_errors.push_back({names[idx], se[j]});
    }
    fit.log_likelihood = ll;
    set_information_criteria(fit);
    return fit;
}

FitResult fit_lognormal_location(std::span<double const> losses, Design const& design)
{
    auto const n = losses.size();
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(losses[i] > 0.0))
            throw DomainError(fmt::format("lognormal fit: loss {} at row {} is not positive", losses[i], i));
        y[static_cast<Eigen::Index>(i)] = std::log(losses[i]);
        log_sum += y[static_cast<Eigen::Index>(i)];
    }
    auto const x = with_intercept(design, n);
    auto const core = ols_core(x, y, "lognormal fit");

    FitResult fit;
    fit.n_obs = n;
    auto const names = parameter_names(design);
    for (Eigen::Index j = 0; j < x.cols(); ++j)
    {
        auto const idx = static_cast<std::size_t>(j);
        fit.coefficients.push_back({names[idx], core.beta[j]});
        fit.standard_errors.push_back({names[idx], core.se[j]});
    }
    double const sigma = std::sqrt(core.rss / static_cast<double>(n));
    fit.coefficients.push_back({"sigma", sigma});
    fit.standard_errors.push_back({"sigma", sigma / std::sqrt(2.0 * static_cast<double>(n))});
    // Density of the losses themselves: Normal on logs less the Jacobian.
    fit.log_likelihood = gaussian_log_likelihood(core.rss, n) - log_sum;
    set_information_criteria(fit);
    return fit;
}

FitResult fit_ar1(std::span<double const> series)
{
    auto const n = series.size();
    if (n < 3)
        throw ValidationError("AR(1) fit needs at least 3 observations");
    auto const m = n - 1;
    double const lo = *std::min_element(series.begin(), series.end() - 1);
    double const hi = *std::max_element(series.begin(), series.end() - 1);
    if (!(hi > lo))
        throw DomainError("AR(1) fit: series has zero variance");

    Eigen::MatrixXd x(static_cast<Eigen::Index>(m), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    for (std::size_t t = 1; t < n; ++t)
    {
        auto const r = static_cast<Eigen::Index>(t - 1);
        x(r, 0) = 1.0;
        x(r, 1) = series[t - 1];
        y[r] = series[t];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::VectorXd const beta = qr.solve(y);
    double const rss = (y - x * beta).squaredNorm();
    double const dm = static_cast<double>(m);
    double const s2 = rss / (dm - 2.0);
    Eigen::Matrix2d const cov = s2 * (x.transpose() * x).inverse();

    double const c = beta[0];
    double const a = beta[1];
    FitResult fit;
    fit.n_obs = m;
    fit.non_stationary = !(std::abs(a) < 1.0);
    double const mean_value = c / (1.0 - a);
    // Delta method for c / (1 - a).
    Eigen::Vector2d const grad(1.0 / (1.0 - a), c / ((1.0 - a) * (1.0 - a)));
    double const mean_se = std::sqrt(std::max(0.0, grad.dot(cov * grad)));
    double const sigma = std::sqrt(s2);

    fit.coefficients = {{"mean", mean_value}, {"ar_coeff", a}, {"sigma", sigma}};
    fit.standard_errors = {{"mean", mean_se},
                           {"ar_coeff", std::sqrt(cov(1, 1))},
                           {"sigma", sigma / std::sqrt(2.0 * dm)}};
    fit.log_likelihood = gaussian_log_likelihood(rss, m);
    set_information_criteria(fit);
    return fit;
}

FitResult fit_ols(std::span<double const> response, Design const& design)
{
    auto const n = response.size();
    auto const x = with_intercept(design, n);
    auto const core = ols_core(x, to_vector(response), "OLS");

    FitResult fit;
    fit.n_obs = n;
    auto const names = parameter_names(design);
    for (Eigen::Index j = 0; j < x.cols(); ++j)
    {
        auto const idx = static_cast<std::size_t>(j);
        fit.coefficients.push_back({names[idx], core.beta[j]});
        fit.standard_errors.push_back({names[idx], core.se[j]});
    }
    double const sigma = std::sqrt(core.rss / static_cast<double>(n));
    fit.coefficients.push_back({"sigma", sigma});
    fit.standard_errors.push_back({"sigma", sigma / std::sqrt(2.0 * static_cast<double>(n))});
    fit.log_likelihood = gaussian_log_likelihood(core.rss, n);
    set_information_criteria(fit);
    return fit;
}

double fit_tweedie_dispersion(std::span<double const> losses, double mu, double power)
{
    if (losses.empty())
        throw ValidationError("Tweedie dispersion: empty sample");
    if (!(mu > 0.0))
        throw DomainError("Tweedie dispersion: mu must be positive");
    if (!(power > 1.0 && power < 2.0))
        throw DomainError("Tweedie dispersion: power must lie in (1, 2)");
    for (double v : losses)
    {
        if (!(v >= 0.0))
            throw DomainError(fmt::format("Tweedie dispersion: negative loss {}", v));
    }
    return sample_variance(losses) / std::pow(mu, power);
}

}  // namespace climadfa
