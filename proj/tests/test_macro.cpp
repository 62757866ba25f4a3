#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "climadfa/errors.hpp"
#include "climadfa/macro.hpp"
#include "climadfa/random.hpp"

using namespace climadfa;

TEST_CASE("inflation step examples")
{
    InflationParams p;
    auto a = step_inflation(0.0517, p, 0.0, 0.0);
    CHECK(a.base == doctest::Approx(0.0517).epsilon(1e-14));
    CHECK(a.adjusted == a.base);
    auto b = step_inflation(0.10, p, 0.0, 0.0);
    CHECK(b.base == doctest::Approx(0.0517 + 0.713 * (0.10 - 0.0517)).epsilon(1e-14));
    CHECK(b.base == doctest::Approx(0.08614).epsilon(1e-4));
    auto c = step_inflation(0.0517, p, 0.0, 0.004);
    CHECK(c.adjusted == doctest::Approx(0.0557).epsilon(1e-12));
    auto d = step_inflation(0.0517, p, 1.0, 0.0);
    CHECK(d.base == doctest::Approx(0.0517 + 0.0309).epsilon(1e-12));
}

TEST_CASE("monthly overlay examples")
{
    InflationParams p;
    std::array<double, 12> baseline{};
    baseline.fill(20.0);
    std::array<double, 12> temps{};
    temps.fill(20.0);
    CHECK(monthly_inflation_overlay(5, temps, baseline, p) == 0.0);

    // Month 5 looks back to April at lag 1.
    p.overlay_alpha[0] = 0.001;
    temps[1] = 22.0;
    CHECK(monthly_inflation_overlay(5, temps, baseline, p) == doctest::Approx(0.002).epsilon(1e-12));

    InflationParams q;
    q.overlay_beta[0] = 0.0005;
    baseline[3] = 29.0;
    temps[1] = 30.0;
    CHECK(monthly_inflation_overlay(5, temps, baseline, q) == doctest::Approx(0.015).epsilon(1e-12));

    // In January, lag 1 is the previous December.
    std::array<double, 12> base2{};
    base2.fill(20.0);
    base2[11] = 19.0;
    std::array<double, 12> t2{};
    t2.fill(20.0);
    InflationParams r;
    r.overlay_alpha[0] = 1.0;
    CHECK(monthly_inflation_overlay(1, t2, base2, r) == doctest::Approx(1.0));

    std::vector<double> short_temps(11, 20.0);
    CHECK_THROWS_AS(monthly_inflation_overlay(1, short_temps, baseline, p), ValidationError);
}

TEST_CASE("annual overlay sums the twelve monthly impacts")
{
    InflationParams p;
    p.baseline_monthly_temp.fill(20.0);
    p.overlay_alpha[2] = 0.01;  // lag 3
    std::vector<double> temps(24, 20.0);
    temps[11] = 21.0;  // December of the first year
    TimeSeries ts(Resolution::monthly, 2020, temps);
    // December 2020 is lag 3 of March 2021 only.
    CHECK(annual_inflation_overlay(ts, 2021, p) == doctest::Approx(0.01));
    CHECK_THROWS_AS(annual_inflation_overlay(ts, 2020, p), ValidationError);
}

TEST_CASE("real and nominal rate examples")
{
    RateParams p;
    auto a = step_real_rate(0.02, p.resid_mean, p, 0.0);
    CHECK(a.real_rate == doctest::Approx(0.04362).epsilon(1e-12));
    auto b = step_real_rate(0.0, p.resid_mean, p, 0.0);
    CHECK(b.real_rate == doctest::Approx(p.resid_mean).epsilon(1e-12));
    auto c = step_real_rate(0.0, p.resid_mean, p, 1.0);
    CHECK(c.real_rate == doctest::Approx(p.resid_mean + 0.025).epsilon(1e-12));
    CHECK(nominal_rate(0.01, 0.03) == doctest::Approx(0.04));
    CHECK(nominal_rate(0.02, 0.0) == 0.02);
    CHECK(nominal_rate(-0.01, 0.05) == doctest::Approx(0.04));
}

TEST_CASE("long-run inflation variance matches the AR(1) stationary variance")
{
    InflationParams p;
    RandomStream rng(2024);
    int const n = 100000;
    double x = p.long_run_mean;
    double sum = 0.0;
    double ss = 0.0;
    for (int i = 0; i < n; ++i)
    {
        x = step_inflation(x, p, rng.normal(), 0.0).base;
        sum += x;
        ss += x * x;
    }
    double const mean = sum / n;
    double const var = (ss - n * mean * mean) / (n - 1);
    double const a = p.ar_coeff;
    double const target = p.sigma * p.sigma / (1.0 - a * a);
    // Standard error of the sample variance of a Gaussian AR(1).
    double const se = target * std::sqrt(2.0 * (1.0 + a * a) / ((1.0 - a * a) * n));
    CHECK(std::abs(var - target) < 3.0 * se);
    double const mean_se = std::sqrt(target * (1.0 + a) / ((1.0 - a) * n));
    CHECK(std::abs(mean - p.long_run_mean) < 3.0 * mean_se);
}

TEST_CASE("macro parameter validation")
{
    InflationParams p;
    p.sigma = -1.0;
    CHECK_THROWS_AS(validate(p), ValidationError);
    RateParams r;
    r.resid_sigma = -0.1;
    CHECK_THROWS_AS(validate(r), ValidationError);
}
