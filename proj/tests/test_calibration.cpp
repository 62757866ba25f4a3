#include <doctest.h>

#include <cmath>
#include <vector>

#include "climadfa/calibration.hpp"
#include "climadfa/errors.hpp"
#include "climadfa/liability.hpp"
#include "climadfa/random.hpp"
#include "oracles.hpp"

using namespace climadfa;

namespace {

Design one_covariate(std::vector<double> const& x, std::string name = "x")
{
    Design d;
    d.x = Eigen::Map<Eigen::VectorXd const>(x.data(), static_cast<Eigen::Index>(x.size()));
    d.names = {std::move(name)};
    return d;
}

void check_information_criteria(FitResult const& fit)
{
    auto const k = static_cast<double>(fit.parameter_count());
    auto const n = static_cast<double>(fit.n_obs);
    CHECK(fit.aic == doctest::Approx(2 * k - 2 * fit.log_likelihood).epsilon(1e-14));
    CHECK(fit.bic == doctest::Approx(k * std::log(n) - 2 * fit.log_likelihood).epsilon(1e-14));
}

}  // namespace

TEST_CASE("affine quantile map")
{
    RandomStream rng(8);
    std::vector<double> back;
    for (int i = 0; i < 500; ++i)
        back.push_back(rng.normal(15.0, 3.0));
    std::vector<double> hist;
    for (double b : back)
        hist.push_back(2.0 * b + 5.0);
    auto const grid = default_quantile_grid();
    REQUIRE(grid.size() == 99);
    auto m = fit_affine_quantile_map(hist, back, grid);
    CHECK(std::abs(m.intercept - 5.0) < 1e-10);
    CHECK(std::abs(m.slope - 2.0) < 1e-10);
    auto id = fit_affine_quantile_map(back, back, grid);
    CHECK(std::abs(id.intercept) < 1e-12);
    CHECK(std::abs(id.slope - 1.0) < 1e-12);
    std::vector<double> flat(50, 3.0);
    CHECK_THROWS_AS(fit_affine_quantile_map(hist, flat, grid), SingularDesignError);
}

TEST_CASE("residual sigma")
{
    std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(fit_residual_sigma(a, a) == 0.0);
    CHECK(fit_residual_sigma(std::vector<double>{1.0, -1.0}, std::vector<double>{0.0, 0.0}) == 1.0);
    CHECK(fit_residual_sigma(std::vector<double>{2, -2, 2, -2}, std::vector<double>{0, 0, 0, 0}) == 2.0);
}

TEST_CASE("poisson glm intercept only")
{
    std::vector<double> counts{1, 2, 3};
    auto fit = fit_poisson_glm(counts, Design::intercept_only(3));
    CHECK(std::abs(fit.coefficient("intercept") - std::log(2.0)) < 1e-12);
    check_information_criteria(fit);
    CHECK(fit.standard_error("intercept") == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-8));
}

TEST_CASE("poisson glm recovers simulated coefficients")
{
    RandomStream rng(17);
    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i < 5000; ++i)
    {
        x.push_back(rng.normal(90.0, 18.0));
        y.push_back(static_cast<double>(rng.poisson(std::exp(-3.714 + 0.037 * x.back()))));
    }
    auto fit = fit_poisson_glm(y, one_covariate(x, "rx5day"));
    CHECK(std::abs(fit.coefficient("intercept") + 3.714) < 3 * fit.standard_error("intercept"));
    CHECK(std::abs(fit.coefficient("rx5day") - 0.037) < 3 * fit.standard_error("rx5day"));
    for (std::size_t i = 1; i < fit.trace.size(); ++i)
        CHECK(fit.trace[i] >= fit.trace[i - 1]);
    check_information_criteria(fit);
}

TEST_CASE("poisson glm agrees with a grid-search oracle")
{
    RandomStream rng(101);
    for (int instance = 0; instance < 4; ++instance)
    {
        std::vector<double> x;
        std::vector<double> y;
        for (int i = 0; i < 80; ++i)
        {
            x.push_back(rng.normal());
            y.push_back(static_cast<double>(rng.poisson(std::exp(0.5 + 0.4 * x.back()))));
        }
        auto const fit = fit_poisson_glm(y, one_covariate(x));
        auto const grid = testing::grid_poisson_mle(y, x);
        CHECK(fit.log_likelihood >= grid.ll - 1e-6);
        CHECK(fit.log_likelihood - grid.ll < 1e-3);
        CHECK(std::abs(fit.coefficient("intercept") - grid.b0) <= 1e-3);
        CHECK(std::abs(fit.coefficient("x") - grid.b1) <= 1e-3);
    }
}

TEST_CASE("poisson glm with an exposure offset")
{
    RandomStream rng(5);
    std::vector<double> offset;
    std::vector<double> y;
    for (int i = 0; i < 2000; ++i)
    {
        double const exposure = 1.0 + 9.0 * rng.uniform();
        offset.push_back(std::log(exposure));
        y.push_back(static_cast<double>(rng.poisson(exposure * 0.3)));
    }
    std::span<double const> off(offset);
    auto fit = fit_poisson_glm(y, Design::intercept_only(y.size()), off);
    double sy = 0.0;
    double se = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        sy += y[i];
        se += std::exp(offset[i]);
    }
    CHECK(std::abs(fit.coefficient("intercept") - std::log(sy / se)) < 1e-10);
}

TEST_CASE("all-zero counts flag separation")
{
    std::vector<double> counts(10, 0.0);
    auto fit = fit_poisson_glm(counts, Design::intercept_only(10));
    CHECK(fit.separation);
}

TEST_CASE("poisson glm rejects rank-deficient designs")
{
    std::vector<double> counts{1, 0, 2, 3};
    Design d;
    d.x = Eigen::MatrixXd::Ones(4, 1);
    d.names = {"const"};
    CHECK_THROWS_AS(fit_poisson_glm(counts, d), SingularDesignError);
}

TEST_CASE("lognormal severity")
{
    std::vector<double> x;
    std::vector<double> losses;
    for (int i = 0; i < 40; ++i)
    {
        x.push_back(50.0 + i);
        losses.push_back(std::exp(1.0 + 0.035 * x.back()));
    }
    auto fit = fit_lognormal_location(losses, one_covariate(x));
    CHECK(std::abs(fit.coefficient("intercept") - 1.0) < 1e-10);
    CHECK(std::abs(fit.coefficient("x") - 0.035) < 1e-10);
    CHECK(std::abs(fit.coefficient("sigma")) < 1e-10);

    std::vector<double> flat(40, 3.0);
    CHECK_THROWS_AS(fit_lognormal_location(losses, one_covariate(flat)), SingularDesignError);
    losses[3] = 0.0;
    CHECK_THROWS_AS(fit_lognormal_location(losses, one_covariate(x)), DomainError);
}

TEST_CASE("lognormal log-likelihood includes the change of variables")
{
    RandomStream rng(12);
    std::vector<double> losses;
    for (int i = 0; i < 300; ++i)
        losses.push_back(rng.lognormal(2.0, 0.7));
    auto fit = fit_lognormal_location(losses, Design::intercept_only(losses.size()));
    double const mu = fit.coefficient("intercept");
    double const s = fit.coefficient("sigma");
    double ll = 0.0;
    for (double v : losses)
    {
        double const z = (std::log(v) - mu) / s;
        ll += -std::log(v * s * std::sqrt(2.0 * M_PI)) - 0.5 * z * z;
    }
    CHECK(fit.log_likelihood == doctest::Approx(ll).epsilon(1e-12));
    check_information_criteria(fit);
}

TEST_CASE("ar1 recovery")
{
    RandomStream rng(21);
    std::vector<double> s;
    double v = 0.0517;
    for (int i = 0; i < 5000; ++i)
    {
        v = 0.0517 + 0.713 * (v - 0.0517) + 0.0309 * rng.normal();
        s.push_back(v);
    }
    auto fit = fit_ar1(s);
    CHECK(std::abs(fit.coefficient("mean") - 0.0517) < 3 * fit.standard_error("mean"));
    CHECK(std::abs(fit.coefficient("ar_coeff") - 0.713) < 3 * fit.standard_error("ar_coeff"));
    CHECK(std::abs(fit.coefficient("sigma") - 0.0309) < 3 * fit.standard_error("sigma"));
    CHECK_FALSE(fit.non_stationary);
    check_information_criteria(fit);

    std::vector<double> w;
    for (int i = 0; i < 5000; ++i)
        w.push_back(rng.normal());
    auto white = fit_ar1(w);
    CHECK(std::abs(white.coefficient("ar_coeff")) < 3 * white.standard_error("ar_coeff"));

    CHECK_THROWS_AS(fit_ar1(std::vector<double>(10, 1.0)), DomainError);
    CHECK_THROWS_AS(fit_ar1(std::vector<double>{1.0, 2.0}), ValidationError);
}

TEST_CASE("ols")
{
    std::vector<double> x{0, 1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x)
        y.push_back(1.0 + 2.0 * v);
    auto exact = fit_ols(y, one_covariate(x));
    CHECK(std::abs(exact.coefficient("intercept") - 1.0) < 1e-12);
    CHECK(std::abs(exact.coefficient("x") - 2.0) < 1e-12);
    CHECK(std::abs(exact.coefficient("sigma")) < 1e-12);

    RandomStream rng(3);
    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 0; i < 5000; ++i)
    {
        xs.push_back(rng.normal(0.025, 0.006));
        ys.push_back(-0.04 + 2.206 * xs.back() + rng.normal(0.0, 0.025));
    }
    auto noisy = fit_ols(ys, one_covariate(xs));
    CHECK(std::abs(noisy.coefficient("x") - 2.206) < 3 * noisy.standard_error("x"));
    check_information_criteria(noisy);

    Design dup;
    dup.x.resize(6, 2);
    for (int i = 0; i < 6; ++i)
        dup.x(i, 0) = dup.x(i, 1) = x[static_cast<std::size_t>(i)];
    dup.names = {"a", "b"};
    CHECK_THROWS_AS(fit_ols(y, dup), SingularDesignError);
}

TEST_CASE("tweedie dispersion")
{
    // Mean 100, sample variance 10000.
    std::vector<double> s{0.0, 200.0};
    double const var = 20000.0;
    CHECK(fit_tweedie_dispersion(s, 100.0, 1.5) == doctest::Approx(var / 1000.0));
    std::vector<double> v{100.0 - std::sqrt(5000.0), 100.0 + std::sqrt(5000.0)};
    CHECK(fit_tweedie_dispersion(v, 100.0, 1.5) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(fit_tweedie_dispersion(std::vector<double>(5, 7.0), 7.0, 1.5) == 0.0);
    CHECK_THROWS_AS(fit_tweedie_dispersion(std::vector<double>{}, 1.0, 1.5), ValidationError);

    NonCatParams p{true, 100.0, 10.0, 1.5, 0.0, 1.0};
    RandomStream rng(44);
    std::vector<double> draws;
    for (int i = 0; i < 1000000; ++i)
        draws.push_back(simulate_noncat_loss(p, rng));
    CHECK(std::abs(fit_tweedie_dispersion(draws, 100.0, 1.5) / 10.0 - 1.0) < 0.03);
}

TEST_CASE("unknown coefficient names are rejected")
{
    auto fit = fit_poisson_glm(std::vector<double>{1, 2, 3}, Design::intercept_only(3));
    CHECK_THROWS_AS(fit.coefficient("nope"), ValidationError);
}
