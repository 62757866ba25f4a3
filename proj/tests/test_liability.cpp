#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "climadfa/errors.hpp"
#include "climadfa/liability.hpp"
#include "support.hpp"

using namespace climadfa;

namespace {

InsurerSpec large()
{
    return {"large", 0.2, 1000.0, 600.0, std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("net catastrophe loss split")
{
    auto a = net_cat_loss(6000, large(), 1000, 600);
    CHECK(a.recovery == doctest::Approx(200));
    CHECK(a.net == doctest::Approx(1000));
    auto b = net_cat_loss(4000, large(), 1000, 600);
    CHECK(b.recovery == 0);
    CHECK(b.net == doctest::Approx(800));
    auto c = net_cat_loss(10000, large(), 1000, 600);
    CHECK(c.recovery == 600);
    CHECK(c.net == doctest::Approx(1400));
}

TEST_CASE("tweedie sampler moments")
{
    NonCatParams p{true, 100.0, 10.0, 1.5, 0.0, 1.0};
    RandomStream rng(31);
    int const n = 200000;
    double sum = 0.0;
    double ss = 0.0;
    for (int i = 0; i < n; ++i)
    {
        double const x = simulate_noncat_loss(p, rng);
        sum += x;
        ss += x * x;
    }
    double const mean = sum / n;
    double const var = (ss - n * mean * mean) / (n - 1);
    double const true_var = 10.0 * std::pow(100.0, 1.5);
    CHECK(std::abs(mean - 100.0) < 3.0 * std::sqrt(true_var / n));
    CHECK(std::abs(var / true_var - 1.0) < 0.03);
}

TEST_CASE("tweedie zero mass equals the Poisson zero probability")
{
    NonCatParams p{true, 1.0, 10.0, 1.5, 0.0, 1.0};
    RandomStream rng(32);
    int const n = 200000;
    int zeros = 0;
    for (int i = 0; i < n; ++i)
        zeros += simulate_noncat_loss(p, rng) == 0.0 ? 1 : 0;
    double const p0 = std::exp(-0.2);
    CHECK(std::abs(zeros / double(n) - p0) < 3.0 * std::sqrt(p0 * (1 - p0) / n));
}

TEST_CASE("zero dispersion returns the mean")
{
    NonCatParams p{true, 3.0, 0.0, 1.5, 0.0, 1.0};
    RandomStream rng(1);
    CHECK(simulate_noncat_loss(p, rng) == 3.0);
}

TEST_CASE("non-catastrophe scaling")
{
    NonCatParams p{true, 1.0, 1.0, 1.5, 0.0, 0.5};
    CHECK(scaled_noncat_loss(1.0, 26e6, p, 0.2, 1.0) == doctest::Approx(2.6e6).epsilon(1e-14));
    NonCatParams unit{true, 1.0, 1.0, 1.5, 1.0, 0.0};
    CHECK(scaled_noncat_loss(7.5, 26e6, unit, 1.0, 1.0) == 7.5);
    CHECK(scaled_noncat_loss(0.0, 26e6, p, 0.2, 1.3) == 0.0);
    NonCatParams bad{true, 1.0, 1.0, 1.5, -10.0, 0.0};
    CHECK_THROWS_AS(scaled_noncat_loss(1.0, 1.0, bad, 1.0, 1.0), DomainError);
    auto m = noncat_premium_moments(26e6, p, 0.2, 1.1);
    double const c = 13e6 * 0.2 * 1.1;
    CHECK(m.mean == doctest::Approx(c));
    CHECK(m.var == doctest::Approx(c * c));
    p.enabled = false;
    CHECK(noncat_premium_moments(26e6, p, 0.2, 1.1).mean == 0.0);
}

TEST_CASE("catastrophe premium moments")
{
    std::vector<HazardYear> one{{{{2.0, 0.0}}, 1.0}};
    RandomStream rng(5);
    auto const m = cat_premium_moments(one, Layer{1.0, 0.0, std::numeric_limits<double>::infinity()}, 100000, rng);
    CHECK(m.gross_mean == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-14));
    CHECK(m.gross_mean == doctest::Approx(3.2974).epsilon(1e-4));
    CHECK(m.gross_var == doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-14));
    CHECK(m.gross_var == doctest::Approx(14.778).epsilon(1e-4));
    CHECK(std::abs(m.layer_mean / m.gross_mean - 1.0) < 0.01);
    // The sample variance of a heavy-tailed sum is noisier than its mean.
    CHECK(std::abs(m.layer_var / m.gross_var - 1.0) < 0.05);

    auto const far = cat_premium_moments(one, Layer{1.0, 1e12, 1e12}, 10000, rng);
    CHECK(far.layer_mean == 0.0);
    CHECK(far.layer_var == 0.0);

    auto const half = cat_premium_moments(one, Layer{0.5, 0.0, std::numeric_limits<double>::infinity()}, 10000, rng);
    CHECK(half.gross_mean == doctest::Approx(0.5 * 2.0 * std::exp(0.5)));
    CHECK(half.gross_var == doctest::Approx(0.25 * 2.0 * std::exp(2.0)));

    CHECK_THROWS_AS(cat_premium_moments(one, Layer{}, 999, rng), ValidationError);
}

TEST_CASE("analytic moments add over hazards and periods")
{
    std::vector<HazardYear> two{{{{0.5, 1.0}, {0.25, 2.0}}, 0.5}, {{{1.0, 0.0}}, 1.5}};
    auto const m = analytic_cat_moments(two, 0.3);
    double const mean = 0.5 * std::exp(1.125) + 0.25 * std::exp(2.125) + std::exp(1.125);
    double const var = 0.5 * std::exp(2.5) + 0.25 * std::exp(4.5) + std::exp(4.5);
    CHECK(m.mean == doctest::Approx(0.3 * mean).epsilon(1e-14));
    CHECK(m.var == doctest::Approx(0.09 * var).epsilon(1e-14));
}

TEST_CASE("bank layout groups periods sharing a severity location")
{
    std::vector<HazardModel> models{testing::flood_model(), testing::storm_model()};
    models.push_back(testing::storm_model());
    models.back().sev_coeffs.clear();
    auto const layout = bank_layout(std::span<HazardModel const>(models));
    CHECK(layout.cells.size() == 1 + 12 + 1);

    std::vector<HazardYear> years{{{{0.1, 1.0}, {0.2, 1.0}}, 1.0}, {{{0.1, 1.0}, {0.2, 2.0}}, 1.0}};
    auto const l2 = bank_layout(std::span<HazardYear const>(years));
    REQUIRE(l2.cells.size() == 3);
    auto const params = l2.cell_params(years);
    CHECK(params[0].rate == doctest::Approx(0.3));
    CHECK(params[2].log_location == 2.0);
}

TEST_CASE("gross premium")
{
    CHECK(gross_premium(100, 400, 200, 100, 0.55) == doctest::Approx(316.5).epsilon(1e-14));
    CHECK(gross_premium(100, 400, 200, 100, 0.0) == 300);
    CHECK(gross_premium(100, 0, 200, 0, 0.55) == 300);
    CHECK_THROWS_AS(gross_premium(1, -1, 1, 1, 0.5), DomainError);
}

TEST_CASE("reinsurance uplift")
{
    ReinsuranceMarketParams m{0.55, 2.0, 3.0, 0.0};
    double const base = 10.0 + 0.55 * std::sqrt(16.0);
    CHECK(reinsurance_premium(10.0, 16.0, 0.55, 3.0, m) == doctest::Approx(base).epsilon(1e-15));
    CHECK(reinsurance_premium(10.0, 16.0, 0.55, 2.75, m) == doctest::Approx(base * std::exp(0.5)).epsilon(1e-14));
    CHECK(reinsurance_uplift(2.75, m) == doctest::Approx(1.6487).epsilon(1e-4));
    CHECK(reinsurance_premium(10.0, 16.0, 0.55, 5.0, m) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("reinsurer capital")
{
    auto a = step_reinsurer_capital(100, 50, 0, 0.0);
    CHECK(a.capital == 150);
    CHECK(a.solvency == 3.0);
    auto b = step_reinsurer_capital(100, 50, 165, 0.1);
    CHECK(std::abs(b.capital) < 1e-12);
    CHECK_THROWS_AS(step_reinsurer_capital(100, 0, 0, 0.0), DomainError);
    CHECK(reinsurer_capital(100, 0, 0, 0.0) == 100);
}

TEST_CASE("liability parameter validation")
{
    auto i = large();
    i.market_share = 0.0;
    CHECK_THROWS_AS(validate(i), ValidationError);
    NonCatParams p;
    p.power = 2.0;
    CHECK_THROWS_AS(validate(p), ValidationError);
    ReinsuranceMarketParams r;
    r.reference_solvency = 0.0;
    CHECK_THROWS_AS(validate(r), ValidationError);
}
